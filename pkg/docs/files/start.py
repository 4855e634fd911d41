"""Translated points of a single map."""
import numpy as np

from contactlab.maps.catalog import make_family
from contactlab.maps.contactomorphism import evaluate, iterate
from contactlab.translated.finder import search_translated_points
from contactlab.translated.points import SeedStrategy

m = make_family("z_perturbed_twist", {"epsilon": 0.3})

# Image, conformal factor and Jacobian of phi^2 at one point
evaluation = evaluate(iterate(m, 2), np.array([0.2, 0.1, 0.4]))
print(evaluation.image, evaluation.g)

# Grid-seeded search for translated points of phi
result = search_translated_points(m, 1, SeedStrategy(resolution=20, z_resolution=5))
print(result.actions)
print(np.unique(np.round(result.actions, 6)))
