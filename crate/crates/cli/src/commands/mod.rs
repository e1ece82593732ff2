pub mod hom;
pub mod jsa;
pub mod sweep;
pub mod table1;
pub mod validate;
