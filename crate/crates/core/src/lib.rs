pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod engine;
pub mod hopf;
