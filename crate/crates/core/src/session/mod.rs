//! The session language: declarations, checks and builders in one script.

mod ast;
mod exec;

pub use ast::{AlgebraDef, BuildKind, HopfDef, MorphAtom, MorphExpr, MuDef, Record, Session, Stmt, StmtKind, CHECK_KINDS};
pub use exec::{run_text, ExecOptions, Executor};
