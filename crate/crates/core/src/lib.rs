//! An executable kernel for an equational logical framework.
//!
//! Signatures declare sorts, constants, and equations between objects.
//! The kernel checks declarations, classifies objects, and semi-decides
//! equality using the signature's equations as rewrite rules, framework
//! β and η, and equations available as hypotheses.

pub mod cli;
pub mod eval_t;
pub mod kernel;
pub mod metatheory;
pub mod parse;
pub mod stdsigs;
pub mod syntax;

pub use kernel::{CheckConfig, Kernel, KernelError, Signature, Verdict};
pub use syntax::{Class, Name, Object, Telescope};
