"""Adversarial packet routing simulator for radio networks."""
