//! Exact finite computations around the Brin–Thompson groups `sV`: dyadic
//! coverings, the poset of dyadic maps out of one cube, matching complexes,
//! and the descending links used in the Stein space connectivity argument.

pub mod complexes;
pub mod dyadic;
pub mod figures;
pub mod groupsv;
pub mod guard;
pub mod matching;
pub mod steinlocal;
pub mod verify;
