"""Air density and per-segment energy.

Thinner air makes rotors work harder: translation energy scales with
1/sqrt(density), and density falls with altitude. Climbing additionally pays
the full potential energy W*g*dh; descending pays nothing back.
"""

from overfly import DroneParams, air_density, average_density, climb_energy, segment_energy

params = DroneParams()
print(f"drone: {params.weight_kg} kg, {params.rotor_count} rotors, "
      f"{params.speed_mps} m/s cruise")
print(f"translation coefficient: {params.energy_coefficient:.3f}\n")

print("altitude ->  air density")
for h in (0.0, 100.0, 500.0, 1000.0, 3000.0):
    print(f"  {h:6.0f} m   {air_density(h, params):.6f} kg/m^3")

# the same 40 m ground move, flown three ways between 0 m and 30 m
flat_lo = segment_energy(40.0, 0.0, average_density(0.0, 0.0, params), params)
climb = segment_energy(40.0, 30.0, average_density(0.0, 30.0, params), params)
descend = segment_energy(40.0, -30.0, average_density(30.0, 0.0, params), params)

print("\n40 m ground move:")
print(f"  level flight     {flat_lo:8.2f} J")
print(f"  climbing 30 m    {climb:8.2f} J")
print(f"  descending 30 m  {descend:8.2f} J")
print(f"  climb - descent  {climb - descend:8.2f} J "
      f"(pure lifting work: {climb_energy(30.0, params):.2f} J)")

# altitude makes the identical maneuver more expensive
lo = segment_energy(40.0, 0.0, air_density(0.0, params), params)
hi = segment_energy(40.0, 0.0, air_density(2000.0, params), params)
print(f"\nsame level move at altitude: {lo:.2f} J near the ground, "
      f"{hi:.2f} J at 2000 m (+{100 * (hi / lo - 1):.2f}%)")
