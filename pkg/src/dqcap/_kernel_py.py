"""Numpy fallback for the grid kernel; same arithmetic as ``_kernel.pyx``."""
import numpy as np


def eval_grid(sig_p, sig_q, dp, dq, scale_p, scale_q, noise_p, noise_q,
              gain, min_area, rtol):
    sp = np.asarray(sig_p, dtype=np.float64)[:, None]
    sq = np.asarray(sig_q, dtype=np.float64)[:, None]
    dp = np.asarray(dp, dtype=np.float64)[None, :]
    dq = np.asarray(dq, dtype=np.float64)[None, :]
    a = np.maximum(scale_p * dp, noise_p)
    b = np.maximum(scale_q * dq, noise_q)
    area = np.maximum(a * b, min_area)
    with np.errstate(divide="ignore"):
        v = np.log2(gain * (sp * sq) / area)
    infeasible = (dp > sp * (1.0 + rtol)) | (dq > sq * (1.0 + rtol))
    v[infeasible] = -np.inf
    return v
