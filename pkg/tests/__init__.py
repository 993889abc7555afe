"""Test suite for the SINR capacity game simulator."""
