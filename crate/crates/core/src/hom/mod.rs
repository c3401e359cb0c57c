pub mod lifting;
pub mod mapping;
pub mod search;
pub mod equivalence;
