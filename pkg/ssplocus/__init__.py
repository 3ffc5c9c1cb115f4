"""Superspecial loci of orthogonal Shimura varieties: local and global quadratic form invariants,
p-adic lattices, Ekedahl-Oort strata, Deligne-Lusztig point counts and mass formulas."""
