"""Folding faces and collapsing safe pentagons."""

# %%
from trifree_frac import families, find_safe_faces, fold_face, collapse_safe_face, odd_girth
from trifree_frac.graph import is_triangle_free

# A strip of three pentagons: the outer face has length 11, odd girth is 5.
g = families.pentagonal_strip(3)
outer = max(g.faces, key=lambda f: f.length)
print(g, "outer face length", outer.length, "odd girth", odd_girth(g))

# %%
# Folding identifies the two neighbours of one face vertex.  The index is the
# first one that keeps the odd girth at 5.
child, vmap, i = fold_face(g, outer)
print("folded at index", i, "->", child, "odd girth", odd_girth(child))
print("vertex map:", vmap)

# %%
# In the dodecahedron every pentagon is safe under many role assignments.
d = families.dodecahedron()
safe = find_safe_faces(d)
print(len(safe), "safe role assignments; first:", safe[0])

# Collapsing removes v1..v4, merges x2 with v5 and x3 with x4: 20 -> 14 vertices.
small, m = collapse_safe_face(d, safe[0])
print(small, "triangle-free:", is_triangle_free(small), "face lengths:", sorted(f.length for f in small.faces))
