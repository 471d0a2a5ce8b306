pub mod cli;
pub mod diagsearch;
pub mod exactnum;
pub mod graphs;
pub mod localclass;
pub mod scheme;
