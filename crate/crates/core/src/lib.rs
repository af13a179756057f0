pub mod f2linalg;
pub mod motivic;
pub mod slices;
pub mod engine;
pub mod assembler;
pub mod zeta;
pub mod cli;
