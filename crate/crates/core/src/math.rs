//! Float helpers that `core` does not provide without `std`.

#[inline]
pub(crate) fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

#[inline]
pub(crate) fn floor(x: f64) -> f64 {
    libm::floor(x)
}

#[inline]
pub(crate) fn round(x: f64) -> f64 {
    libm::round(x)
}

/// `|a - b| <= tol * max(1, |a|, |b|)`
#[inline]
pub(crate) fn close_rel(a: f64, b: f64, tol: f64) -> bool {
    let scale = 1.0f64.max(abs(a)).max(abs(b));
    abs(a - b) <= tol * scale
}

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}
