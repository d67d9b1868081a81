"""Exact symbolic computation in free non-associative algebras."""
