use std::ffi::OsString;

/// CLI entry point; returns the process exit code.
pub fn run<I, T>(_argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    1
}
