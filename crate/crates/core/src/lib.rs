pub mod canon;
pub mod color;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod groups;
pub mod linalg;
pub mod model;
pub mod moves;
pub mod quotient;
pub mod relations;
pub mod report;
pub mod vector;
pub mod verify;
