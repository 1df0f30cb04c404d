pub mod atlas;
pub mod charclass;
pub mod dsl;
pub mod exactpoly;
pub mod gring;
pub mod polysys;
pub mod zlinalg;
