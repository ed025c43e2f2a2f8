"""Core engine: coefficients, braidings, free algebra, quotients and checks."""
