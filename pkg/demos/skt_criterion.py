"""Walk through the SKT criterion on the fps6 family.

For each parameter choice the value |A|^2+|D|^2+|E|^2+2Re(conj(B)C) is printed
next to ddbar F for the diagonal metric and for a random full metric.
"""

import random

from nilforms import HermitianMetric, catalog, check_k_gauduchon, format_form, random_metric
from nilforms.scalars import GaussianRational as GR
from nilforms.special_metrics import condition_value_fps

CHOICES = [
    {"A": 0, "B": 1, "C": GR(0, 1), "D": 0, "E": 0},
    {"A": 1, "B": 1, "C": GR(-1, 3), "D": 1, "E": 0},
    {"A": 1, "B": 2, "C": GR(-1, 0), "D": 0, "E": 1},
    {"A": 1, "B": 1, "C": 1, "D": 0, "E": 0},
]

rng = random.Random(1)
for params in CHOICES:
    pres = catalog("fps6", params)
    vals = [GR(params[k]) if not isinstance(params[k], GR) else params[k] for k in "ABCDE"]
    value = condition_value_fps(*vals)
    diag = check_k_gauduchon(pres, HermitianMetric.identity(3), 1)
    full = check_k_gauduchon(pres, random_metric(3, rng), 1)
    print(f"params {', '.join(f'{k}={v}' for k, v in zip('ABCDE', vals))}")
    print(f"  condition value       {value}")
    print(f"  ddbar F, H = Id       {format_form(diag.residual) if diag.residual else '0'}")
    print(f"  SKT (Id / random H)   {diag.holds} / {full.holds}")
