import numpy as np

from volergo.dynamics import Quadcopter12
from volergo.spatial import SearchSpace
from volergo.volumetric import RaycastCamera, footprint_area, write_footprint_csv

# -----------------------------------------------------
# Camera footprint of the quadcopter at increasing altitude
# -----------------------------------------------------

space = SearchSpace([1.0, 1.0])
quadcopter = Quadcopter12()
camera = RaycastCamera(np.deg2rad(60.0), np.deg2rad(45.0), clamp_to=space)

for altitude in (0.25, 0.5, 1.0):
    state = quadcopter.initial_state([0.5, 0.5])
    state[2] = altitude
    points = camera.sample_points(state, quadcopter)
    print(f"altitude {altitude:.2f} m: footprint area {footprint_area(points):.4f} m^2")

# -----------------------------------------------------
# Dump the footprint along a short straight flight
# -----------------------------------------------------

states = np.array([quadcopter.initial_state([x, 0.5]) for x in np.linspace(0.2, 0.8, 5)])
write_footprint_csv("./footprints.csv", camera.sample_points(states, quadcopter))
print("Footprints written to ./footprints.csv")
