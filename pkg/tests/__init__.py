"""Tests for the memetic PSO SAT solver."""
