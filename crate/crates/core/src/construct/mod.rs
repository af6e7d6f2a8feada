pub mod eet;
pub mod filters;
pub mod race;
pub mod vbuild;
pub mod weaker;
pub mod xbuild;
