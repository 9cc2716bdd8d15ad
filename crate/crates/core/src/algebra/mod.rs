pub mod factor;
pub mod linalg;
pub mod modgcd;
pub mod partial;
pub mod poly;
pub mod rat;
pub mod ratfunc;
pub mod roots;
