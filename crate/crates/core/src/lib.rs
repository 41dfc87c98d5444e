pub mod error;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod spectra;
pub mod rep;
pub mod families;
pub mod classify;
pub mod groebner;
pub mod yangbaxter;
pub mod document;
