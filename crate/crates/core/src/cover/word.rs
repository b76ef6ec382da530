//! Freely reduced words in the surface group generators.
