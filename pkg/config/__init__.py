"""Configuration package for the SINR capacity game simulator."""
