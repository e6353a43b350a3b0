pub mod error;
pub mod extorus;
pub mod matrix;
pub mod qcoeff;
pub mod seedcore;
pub mod patterns;
pub mod poly;
pub mod gca;
pub mod gqca;
pub mod cli;
