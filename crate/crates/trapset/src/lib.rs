//! Trapping-set taxonomy for LDPC Tanner graphs (TS / ETS / LETS / ABS / EABS),
//! exact desk-scale solvers for the Min-b/Min-a LETS and EABS problems, the
//! reduction chain from Monotone 1-IN-3 SAT, and a verification harness that
//! checks every gadget property by brute force on small instances.

pub mod alist;
pub mod harness;
pub mod reductions;
pub mod sat;
pub mod search;
pub mod tanner;
