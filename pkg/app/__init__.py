"""App package for the P-variation Lab: command line and HTTP API."""
