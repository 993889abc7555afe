"""SINR model, transmission game, baselines and experiment runner."""
