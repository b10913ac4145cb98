"""Standard normal quantiles (Wichura's AS241, PPND16) and the chi-square(1) quantile.

AS241 is a piecewise rational approximation with relative error around
1e-16, vectorised here so it can turn blocks of uniforms into normals.
"""

import numpy as np

from .errors import InvalidConfidence

# Numerator/denominator coefficients, highest degree first (np.polyval order).
_A = np.array([2.5090809287301226727e3, 3.3430575583588128105e4,
               6.7265770927008700853e4, 4.5921953931549871457e4,
               1.3731693765509461125e4, 1.9715909503065514427e3,
               1.3314166789178437745e2, 3.3871328727963666080e0])
_B = np.array([5.2264952788528545610e3, 2.8729085735721942674e4,
               3.9307895800092710610e4, 2.1213794301586595867e4,
               5.3941960214247511077e3, 6.8718700749205790830e2,
               4.2313330701600911252e1, 1.0])
_C = np.array([7.74545014278341407640e-4, 2.27238449892691845833e-2,
               2.41780725177450611770e-1, 1.27045825245236838258e0,
               3.64784832476320460504e0, 5.76949722146069140550e0,
               4.63033784615654529590e0, 1.42343711074968357734e0])
_D = np.array([1.05075007164441684324e-9, 5.47593808499534494600e-4,
               1.51986665636164571966e-2, 1.48103976427480074590e-1,
               6.89767334985100004550e-1, 1.67638483018380384940e0,
               2.05319162663775882187e0, 1.0])
_E = np.array([2.01033439929228813265e-7, 2.71155556874348757815e-5,
               1.24266094738807843860e-3, 2.65321895265761230930e-2,
               2.96560571828504891230e-1, 1.78482653991729133580e0,
               5.46378491116411436990e0, 6.65790464350110377720e0])
_F = np.array([2.04426310338993978564e-15, 1.42151175831644588870e-7,
               1.84631831751005468180e-5, 7.86869131145613259100e-4,
               1.48753612908506148525e-2, 1.36929880922735805310e-1,
               5.99832206555887937690e-1, 1.0])


def norm_ppf(p):
    """Inverse of the standard normal CDF.

    Parameters
    ----------
    p : float or array_like
        Probabilities strictly inside (0, 1).

    Returns
    -------
    float or ndarray
        ``z`` with ``Phi(z) = p``; a Python float when ``p`` is scalar.
    """
    p_arr = np.asarray(p, dtype=float)
    if np.any(~((p_arr > 0.0) & (p_arr < 1.0))):
        raise ValueError("probabilities must lie strictly inside (0, 1)")
    q = p_arr - 0.5
    out = np.empty_like(p_arr)

    central = np.abs(q) <= 0.425
    qc = q[central]
    r = 0.180625 - qc * qc
    out[central] = qc * np.polyval(_A, r) / np.polyval(_B, r)

    tail = ~central
    qt = q[tail]
    r = np.sqrt(-np.log(np.where(qt < 0.0, p_arr[tail], 1.0 - p_arr[tail])))
    near = r <= 5.0
    x = np.where(
        near,
        np.polyval(_C, r - 1.6) / np.polyval(_D, r - 1.6),
        np.polyval(_E, r - 5.0) / np.polyval(_F, r - 5.0),
    )
    out[tail] = np.where(qt < 0.0, -x, x)

    if out.ndim == 0:
        return float(out)
    return out


def chi2_1_ppf(confidence):
    """Quantile of the chi-square distribution with one degree of freedom.

    Uses ``chi2_1(c) = z**2`` with ``z`` the upper ``(1 - c)/2`` normal point;
    working from the lower tail keeps precision when ``c`` is close to 1.
    """
    confidence = float(confidence)
    if not 0.0 < confidence < 1.0:
        raise InvalidConfidence(f"confidence must be in (0, 1), got {confidence}")
    z = norm_ppf(0.5 * (1.0 - confidence))
    return z * z
