#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod cubic;
pub mod forms;
pub mod gf;
pub mod linalg;
pub mod net;
pub mod oracle;
pub mod parallel;
pub mod pencil;
pub mod poly;
pub mod subspace;
pub mod verify;
