# Finite fields F_{q^k} as towers over a fixed F_q, with vectorised tables.
import numpy as np

from aslfunc.field import embedding_map, extension, make_field, subfield_embed

# F_9 is built once as F_3[x]/(x^2 + ...) and extensions of it sit on top
F9 = extension(9, 1)
F729 = extension(9, 3)
print("F_9 modulus:", F9.modulus, " F_729 over F_9 modulus:", F729.modulus)

g = F9.gen
print("x in F_9 and its powers:", [str((g**i).coords) for i in range(4)])

# elements are indices into a fixed enumeration; arithmetic is table driven
t = F729.tables
x = np.arange(1, 6)
print("x * x^-1 == 1:", t.mul(x, t.inv(x)))

# Frobenius x -> x^q fixes exactly the copy of F_q
fixed = [i for i in range(F729.order) if int(t.frobenius(np.array([i]))[0]) == i]
print("elements fixed by x -> x^9:", len(fixed))

# embeddings are compatible along towers: F_9 -> F_81 -> F_6561 equals F_9 -> F_6561
e1 = embedding_map(extension(9, 1), extension(9, 2))
e2 = embedding_map(extension(9, 2), extension(9, 4))
e12 = embedding_map(extension(9, 1), extension(9, 4))
print("tower commutes:", bool(np.all(e2[e1] == e12)))

F5 = make_field(5)
print("2 in F_5 seen in F_25:", subfield_embed(F5(2), make_field(5, 1, 2)))
