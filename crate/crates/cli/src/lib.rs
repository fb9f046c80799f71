//! Document format, command surface and DOT export for manymodal.

pub mod commands;
pub mod document;
pub mod dot;

pub use commands::run_command;
pub use document::{load_document, load_str, save_document, Document, DocumentError, Registry};
