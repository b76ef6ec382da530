//! Surface groups, automorphisms, regular finite covers and lifted
//! homology actions.

pub mod word;
