/// Outcome of a criterion check: the boolean answer, a certificate that can
/// be rechecked with independent operations, and human-readable notes.
#[derive(Clone, Debug)]
pub struct Verdict<C> {
    pub holds: bool,
    pub certificate: C,
    pub diagnostics: Vec<String>,
}

impl<C> Verdict<C> {
    pub fn new(holds: bool, certificate: C) -> Self {
        Verdict { holds, certificate, diagnostics: Vec::new() }
    }

    pub fn note(mut self, msg: impl Into<String>) -> Self {
        self.diagnostics.push(msg.into());
        self
    }
}
