use anyhow::Error;

/// An error tagged with the exit code it maps to.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags, unreadable or malformed inputs, mismatched shapes.
    Input(Error),
    /// Anything else, such as an output that cannot be written.
    Internal(Error),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Internal(_) => 1,
        }
    }

    pub fn error(&self) -> &Error {
        match self {
            Failure::Input(e) | Failure::Internal(e) => e,
        }
    }
}

pub trait ResultExt<T> {
    fn input(self, context: impl FnOnce() -> String) -> Result<T, Failure>;
    fn internal(self, context: impl FnOnce() -> String) -> Result<T, Failure>;
}

impl<T, E> ResultExt<T> for Result<T, E>
where
    E: std::error::Error + Send + Sync + 'static,
{
    fn input(self, context: impl FnOnce() -> String) -> Result<T, Failure> {
        self.map_err(|e| Failure::Input(Error::new(e).context(context())))
    }

    fn internal(self, context: impl FnOnce() -> String) -> Result<T, Failure> {
        self.map_err(|e| Failure::Internal(Error::new(e).context(context())))
    }
}
