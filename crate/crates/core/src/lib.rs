//! Family-free DCJ-indel distances between genomes.

pub mod decomposition;
pub mod diagram;
pub mod engine;
pub mod exact;
pub mod genome;
pub mod ilp;
pub mod numeric;
pub mod phylo;
pub mod similarity;
pub mod simgen;
