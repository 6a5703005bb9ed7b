"""Configuration package for the P-variation Lab: environment settings and experiment configs."""
