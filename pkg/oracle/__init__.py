"""Brute-force Cayley-table oracle for finite loops."""
