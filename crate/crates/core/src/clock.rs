/// Source of wall-clock time in seconds.
///
/// The origin is arbitrary; only differences between two readings are used.
pub trait Clock {
    fn now(&self) -> f64;
}

/// A clock that never advances. Walltime limits never fire under it.
#[derive(Clone, Copy, Debug, Default)]
pub struct NullClock;

impl Clock for NullClock {
    fn now(&self) -> f64 {
        0.0
    }
}

impl<C: Clock + ?Sized> Clock for &C {
    fn now(&self) -> f64 {
        (**self).now()
    }
}
