pub mod formats;
pub mod render;
