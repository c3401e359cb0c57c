pub mod category;
pub mod diagram;
pub mod engine;
pub mod cone_check;
