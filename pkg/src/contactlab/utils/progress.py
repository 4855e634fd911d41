"""Progress reporting for long multistart solves."""

import io

from tqdm import tqdm


class TqdmWithCallable(tqdm):
    """Tqdm class that also calls a given callable with the completed fraction."""

    def __init__(self, *args, **kwargs):
        """Initialize class."""
        self.callable = kwargs.pop("callable", None)
        super().__init__(*args, **kwargs)

    def update(self, n=1):
        """Update."""
        super().update(n=n)
        if self.callable and self.total:
            self.callable(self.n / self.total)


def progress_bar(total: int, desc: str, show: bool = False, callable=None):
    """Return a progress bar over ``total`` units of work.

    The bar is written to stderr only when ``show`` is set; a ``callable``
    receives progress fractions either way.
    """
    return TqdmWithCallable(
        total=total,
        desc=desc,
        ncols=100,
        disable=not show and callable is None,
        file=None if show else io.StringIO(),
        callable=callable,
    )
