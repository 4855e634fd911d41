""".. Ignore pydocstyle D400.

=============
Census tables
=============

Pandas views of a census report. The action table is what ``census`` writes
as CSV::

    tables = CensusTables(report)
    tables.actions
    tables.to_csv("actions.csv")

.. autoclass:: CensusTables
    :members:

    .. automethod:: __init__

"""

from functools import lru_cache

import pandas as pd

from contactlab.translated.census import CensusReport

ACTION_COLUMNS = [
    "k",
    "action",
    "orbit_id",
    "nondegenerate",
    "residual_norm",
    "continuum_flag",
]
CLUSTER_COLUMNS = [
    "orbit_id",
    "ks",
    "members",
    "continuum",
    "periodic",
    "representative",
]
FLOAT_FORMAT = "%.12e"


class CensusTables:
    """Action and cluster tables of a :class:`CensusReport`."""

    def __init__(self, report: CensusReport):
        """Initialize class.

        :param report: census report
        """
        self.report = report

    @property
    @lru_cache()
    def actions(self) -> pd.DataFrame:
        """Return one row per (cluster, k), sorted by k, action and orbit id."""
        rows = []
        for c in self.report.clusters:
            for k in c.ks:
                point = c.representative_for(k)
                rows.append(
                    {
                        "k": k,
                        "action": point.action,
                        "orbit_id": c.orbit_id,
                        "nondegenerate": point.nondegenerate,
                        "residual_norm": point.residual_norm,
                        "continuum_flag": c.continuum,
                    }
                )
        table = pd.DataFrame(rows, columns=ACTION_COLUMNS)
        table = table.sort_values(["k", "action", "orbit_id"], kind="mergesort")
        return table.reset_index(drop=True).astype(
            {"k": int, "orbit_id": int, "nondegenerate": bool, "continuum_flag": bool}
        )

    @property
    @lru_cache()
    def clusters(self) -> pd.DataFrame:
        """Return one row per cluster across iterates."""
        periodic = {p.orbit_id for p in self.report.periodic_points}
        rows = [
            {
                "orbit_id": c.orbit_id,
                "ks": " ".join(str(k) for k in c.ks),
                "members": len(c.members),
                "continuum": c.continuum,
                "periodic": c.orbit_id in periodic,
                "representative": " ".join(
                    FLOAT_FORMAT % v for v in c.representative.point.as_array()
                ),
            }
            for c in self.report.clusters
        ]
        return pd.DataFrame(rows, columns=CLUSTER_COLUMNS)

    def to_csv(self, path: str):
        """Write the action table with fixed float formatting."""
        self.actions.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
