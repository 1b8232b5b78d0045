pub mod arith;
pub mod error;
pub mod identities;
pub mod elliptic;
pub mod function_field;
pub mod surface;
pub mod twists;
pub mod cli;
