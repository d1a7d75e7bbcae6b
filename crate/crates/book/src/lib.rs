// The guide under book/ is plain mdbook Markdown. mdbook cannot run Rust
// snippets against workspace crates, so each chapter is pulled in here as
// the docs of an empty module and `cargo test -p twinfock-book` runs every
// snippet as a doc-test. One module per chapter keeps failure reports
// pointing at the right file.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/conventions.md")]
pub mod conventions {}
#[doc = include_str!("../../../book/src/oracle.md")]
pub mod oracle {}
#[doc = include_str!("../../../book/src/series.md")]
pub mod series {}
#[doc = include_str!("../../../book/src/closed-forms.md")]
pub mod closed_forms {}
#[doc = include_str!("../../../book/src/qfi.md")]
pub mod qfi {}
#[doc = include_str!("../../../book/src/energy.md")]
pub mod energy {}
#[doc = include_str!("../../../book/src/scans.md")]
pub mod scans {}
#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
