pub mod colimits;
pub mod io;
pub mod iso;
pub mod join;
pub mod map;
pub mod model;
pub mod nerve;
pub mod product;
pub mod skeleton;
pub mod sset;
pub mod standard;
