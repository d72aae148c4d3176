pub mod ntriples;
pub mod store;
pub mod term;
pub mod vocab;
pub mod cli;
pub mod fixtures;
pub mod genbench;
pub mod singleton;
pub mod query;
pub mod reasoner;
