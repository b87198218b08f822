//! What a command hands back to `main` (or to tests) instead of printing
//! directly: the stdout payload plus any warnings bound for stderr.

#[derive(Debug, Clone, Default)]
pub struct CommandOutput {
    pub stdout: String,
    pub warnings: Vec<String>,
}
