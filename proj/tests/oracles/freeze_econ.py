"""Regenerates tests/data/*.csv and prints reference values computed with
statsmodels for the econometrics unit tests.

    python3 tests/oracles/freeze_econ.py
"""
import json
import pathlib

import numpy as np
from statsmodels.tsa.stattools import adfuller
from statsmodels.tsa.vector_ar.vecm import VECM, coint_johansen
from statsmodels.tsa.api import VAR

DATA = pathlib.Path(__file__).resolve().parents[1] / "data"
rng = np.random.default_rng(12345)


def save(name, matrix, header):
    np.savetxt(DATA / name, matrix, delimiter=",", header=",".join(header), comments="", fmt="%.17g")


# Univariate series for the ADF test.
n = 250
walk = np.cumsum(rng.normal(size=n))
ar = np.zeros(n)
for t in range(1, n):
    ar[t] = 0.5 * ar[t - 1] + rng.normal()
ar2 = np.zeros(n)
e = rng.normal(size=n)
for t in range(2, n):
    ar2[t] = 0.6 * ar2[t - 1] + 0.25 * ar2[t - 2] + e[t] + 0.3
save("adf_series.csv", np.column_stack([walk, ar, ar2]), ["walk", "ar1", "ar2"])

out = {}
for name, x in [("walk", walk), ("ar1", ar), ("ar2", ar2)]:
    for reg in ["c", "ct"]:
        stat, p, lag, nobs, crit, _ = adfuller(x, maxlag=12, regression=reg, autolag="BIC")
        out[f"adf_{name}_{reg}"] = dict(stat=stat, lag=lag, nobs=nobs, crit=[crit["1%"], crit["5%"], crit["10%"]])

# Trivariate system with one cointegrating relation.
n = 300
trend = np.cumsum(rng.normal(size=(n, 2)), axis=0)
y = np.zeros((n, 3))
y[:, 0] = trend[:, 0] + rng.normal(scale=0.5, size=n)
y[:, 1] = 0.5 * trend[:, 0] + trend[:, 1] + rng.normal(scale=0.5, size=n)
y[:, 2] = trend[:, 1] + rng.normal(scale=0.5, size=n)
save("coint_system.csv", y, ["y1", "y2", "y3"])

for k_ar_diff in [1, 2]:
    j = coint_johansen(y, 0, k_ar_diff)
    out[f"johansen_lag{k_ar_diff + 1}"] = dict(eig=j.eig.tolist(), trace=j.lr1.tolist(), cvt=j.cvt.tolist())

model = VECM(y, k_ar_diff=1, coint_rank=1, deterministic="co").fit()
out["vecm_lag2_rank1"] = dict(
    alpha=model.alpha.tolist(), beta=model.beta.tolist(), gamma=model.gamma.tolist(), const=model.det_coef.tolist()
)

sel = VAR(y).select_order(maxlags=6, trend="c")
out["var_bic_selected"] = int(sel.selected_orders["bic"])
out["var_bic"] = [float(v) for v in sel.ics["bic"]]

print(json.dumps(out, indent=1))
