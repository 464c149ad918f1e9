pub mod bounds;
pub mod certify;
pub mod cli;
pub mod hjpert;
pub mod poly;
pub mod rng;
pub mod sospert;
pub mod stereo;
pub mod unisos;
pub mod zerodim;
