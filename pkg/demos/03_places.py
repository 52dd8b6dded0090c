# Places of G_m over F_q: monic irreducibles other than t, grouped by degree.
from aslfunc.places import count_places, irreducibles, irreducibles_sieve, place_set

ps = place_set(3, 2)
print("P_3(2):", [v.label() for v in ps.places])
print("counts by degree:", ps.counts)

# the enumeration by Frobenius orbits agrees with a direct sieve
print("orbit route == sieve route:", irreducibles(5, 3) == irreducibles_sieve(5, 3))

# prime number theorem for F_q[t]: pi_q(n) is close to q^n / n
for n in range(1, 8):
    print(f"pi_3({n}) = {count_places(3, n):5d}   3^n/n = {3**n / n:8.1f}")

print("|P_3(7)| =", len(place_set(3, 7)))
