pub mod color;
pub mod gamma;
pub mod transforms;
pub mod metrics;
pub mod fuzzy;
pub mod gamut;
pub mod io;
pub mod bench;
pub mod analysis;
pub mod service;
pub mod cli;
