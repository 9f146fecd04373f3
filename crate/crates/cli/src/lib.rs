//! Library side of the `mpkit` binary: Octave-style printing, matrix file
//! input, the worked-example demos and the command dispatcher.

pub mod commands;
pub mod demos;
pub mod matrix_file;
pub mod octave;

pub use commands::run;
