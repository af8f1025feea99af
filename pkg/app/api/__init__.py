# HTTP surface for the simulator
