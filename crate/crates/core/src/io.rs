//! Text formats for polynomials, matrices and Siegel points.
