pub mod central_ext;
pub mod cli;
pub mod cyclotomic;
pub mod datum;
pub mod epsilon;
pub mod folding_descent;
pub mod intmat;
pub mod lattice;
pub mod lie_algebra;
pub mod linalg;
pub mod reps;
