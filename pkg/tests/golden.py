"""Hand-instantiated fusion equations.

Each entry is (case id, k, A, B, expected right-hand side).  The right-hand
sides were worked out by hand from the closed-form rules at the given level
(ranges, mod-4 conditions and sign tables applied term by term, then l > k/2
reflected and reducible half-level sums split).  They are frozen here and never
generated from the implementation.

Untwisted inputs may carry ``:s2``/``:s3`` to state the variant in the
coordinates of another involution, exactly as the rule is displayed.
"""

GOLDEN = [
    # vacuum variants acting on untwisted modules
    ("vac.r_times_1", 5, "U:0:v2", "U:2:v1", "U:2:v2"),
    ("vac.r_times_r", 5, "U:0:v3", "U:2:v3", "U:2:v1"),
    ("vac.rst.2_3", 5, "U:0:v2", "U:4:v3", "U:4:v4"),
    ("vac.rst.4_2", 5, "U:0:v4", "U:2:v2", "U:2:v3"),
    ("vac.klein.2_3", 7, "U:0:v2", "U:0:v3", "U:0:v4"),
    # vacuum variants acting on twisted modules, in the twisting involution's coordinates
    ("current.fix.s1", 5, "U:0:v2", "T1:1:+", "T1:1:+"),
    ("current.flip.s2", 5, "U:0:v3:s2", "T2:1:+", "T2:1:-"),
    ("current.flip.s3", 5, "U:0:v4:s3", "T3:2:-", "T3:2:+"),
    ("current.half.s2", 6, "U:0:v2:s2", "T2:3:v1", "T2:3:v2"),
    ("current.half.s3", 4, "U:0:v3:s3", "T3:2:v1", "T3:2:v3"),
    # untwisted x untwisted
    ("uu.odd_odd", 5, "U:1:+", "U:3:+",
     "U:2:v1 + U:2:v2 + U:2:v3 + U:2:v4 + U:4:v1 + U:4:v2 + U:4:v3 + U:4:v4"),
    ("uu.odd_odd.top", 5, "U:5:+", "U:5:+", "U:0:v1 + U:0:v2 + U:0:v3 + U:0:v4"),
    ("uu.odd_even", 5, "U:1:+", "U:2:v3", "U:1:+ + U:3:+"),
    ("uu.same_variant", 5, "U:2:v3", "U:2:v3", "U:0:v1 + U:2:v4 + U:4:v1"),
    ("uu.same_variant.k4", 4, "U:2:v1", "U:2:v1", "U:0:v1 + U:2:v4 + U:4:v1"),
    ("uu.2_1", 5, "U:2:v2", "U:4:v1", "U:2:v2 + U:4:v3"),
    ("uu.3_4", 5, "U:2:v3", "U:4:v4", "U:2:v2 + U:4:v3"),
    ("uu.2_4", 5, "U:2:v2", "U:2:v4", "U:0:v3 + U:2:v2 + U:4:v3"),
    ("uu.3_1", 5, "U:0:v3", "U:2:v1", "U:2:v3"),
    ("uu.2_3", 5, "U:2:v2", "U:2:v3", "U:0:v4 + U:2:v1 + U:4:v4"),
    ("uu.4_1", 5, "U:4:v4", "U:2:v1", "U:2:v4 + U:4:v1"),
    # untwisted x twisted, twisted index below k/2
    ("ut.odd", 5, "U:1:+", "T1:2:+", "T1:1:+ + T1:1:- + T1:2:+ + T1:2:-"),
    ("ut.odd.reflect", 5, "U:5:+", "T1:0:+", "T1:0:+ + T1:0:-"),
    ("ut.odd.minus", 5, "U:3:+", "T2:1:-", "T2:1:+ + T2:1:- + T2:2:+ + T2:2:-"),
    ("ut.s1.v1", 5, "U:2:v1", "T1:1:+", "T1:1:- + T1:2:+"),
    ("ut.s1.v2", 5, "U:2:v2", "T1:1:-", "T1:1:+ + T1:2:-"),
    ("ut.s1.v3", 5, "U:2:v3", "T1:1:+", "T1:1:+ + T1:2:-"),
    ("ut.s1.v4", 5, "U:4:v4", "T1:0:-", "T1:1:+"),
    ("ut.s1.k6", 6, "U:2:v1", "T1:0:+", "T1:2:+"),
    ("ut.s2.v1", 5, "U:2:v1", "T2:0:+", "T2:2:+"),
    ("ut.s2.v3", 5, "U:2:v3", "T2:2:+", "T2:0:+ + T2:1:+ + T2:2:-"),
    ("ut.s2.v2", 5, "U:2:v2", "T2:0:+", "T2:2:-"),
    ("ut.s2.v4", 5, "U:4:v4", "T2:1:-", "T2:0:+ + T2:2:-"),
    ("ut.s3.v2", 5, "U:2:v2", "T3:1:+", "T3:1:- + T3:2:+"),
    ("ut.s3.v3", 5, "U:4:v3", "T3:2:-", "T3:1:- + T3:2:+"),
    ("ut.s3.v1", 5, "U:2:v1", "T3:1:+", "T3:1:+ + T3:2:-"),
    ("ut.s3.v4", 5, "U:2:v4", "T3:0:-", "T3:2:+"),
    # untwisted x half level
    ("uth.odd.k4", 4, "U:1:+", "T3:2:v3", "T3:1:+ + T3:1:-"),
    ("uth.odd.k6", 6, "U:1:+", "T3:3:v2", "T3:2:+ + T3:2:-"),
    ("uth.j1.4z", 8, "U:4:v1", "T1:4:v1", "T1:0:+ + T1:2:- + T1:4:v1"),
    ("uth.j2.4z2", 6, "U:2:v2", "T1:3:v1", "T1:1:+ + T1:3:v4"),
    ("uth.j1.4z2", 6, "U:2:v1", "T1:3:v1", "T1:1:+ + T1:3:v3"),
    ("uth.j3.4z2", 6, "U:2:v3", "T1:3:v1", "T1:1:- + T1:3:v1"),
    ("uth.j4.s2", 6, "U:2:v4:s2", "T2:3:v1", "T2:1:- + T2:3:v2"),
    ("uth.lst.s3", 8, "U:4:v2:s3", "T3:4:v3", "T3:0:- + T3:2:+ + T3:4:v4"),
    ("uth.swap", 6, "U:2:v1", "T1:3:v2", "T1:1:+ + T1:3:v4"),
    ("uth.jj", 6, "U:2:v3", "T1:3:v3", "T1:1:+ + T1:3:v3"),
    ("uth.unit", 4, "U:0:v1:s2", "T2:2:v1", "T2:2:v1"),
    # twisted x twisted, distinct sectors
    ("tt.generic", 5, "T1:1:+", "T2:2:-", "T3:1:+ + T3:1:- + T3:2:+ + T3:2:-"),
    ("tt.generic.k4", 4, "T1:0:+", "T3:1:-", "T2:1:+ + T2:1:-"),
    ("tt.generic.half_out", 4, "T2:1:+", "T3:1:+",
     "T1:0:+ + T1:0:- + T1:2:v1 + T1:2:v2 + T1:2:v3 + T1:2:v4"),
    ("tt.half.odd", 4, "T1:1:+", "T2:2:v3", "T3:1:+ + T3:1:-"),
    ("tt.half.odd.s3s1", 4, "T3:1:-", "T1:2:v2", "T2:1:+ + T2:1:-"),
    # lower summation bound taken as |i - k/2| (see the qdim check in test_fusion)
    ("tt.half.even.plus.k4", 4, "T1:0:+", "T2:2:v1", "T3:2:v1 + T3:2:v4"),
    ("tt.half.even.plus.k6", 6, "T1:0:+", "T2:3:v1", "T3:3:v1 + T3:3:v4"),
    ("tt.half.even.plus.k8", 8, "T1:2:+", "T2:4:v1", "T3:2:+ + T3:2:- + T3:4:v1 + T3:4:v4"),
    ("tt.half.even.minus.k8", 8, "T1:2:-", "T2:4:v1", "T3:2:+ + T3:2:- + T3:4:v2 + T3:4:v3"),
    ("tt.half.even.v2", 8, "T1:2:+", "T2:4:v2", "T3:2:+ + T3:2:- + T3:4:v2 + T3:4:v3"),
    ("tt.half.even.v3", 8, "T1:2:-", "T2:4:v3", "T3:2:+ + T3:2:- + T3:4:v2 + T3:4:v3"),
    ("tt.half.even.v4", 8, "T1:2:-", "T2:4:v4", "T3:2:+ + T3:2:- + T3:4:v1 + T3:4:v4"),
    # half level x half level, k in 4Z+2
    ("hh.4z2.s1s2.plus", 6, "T1:3:v1", "T2:3:v1", "T3:0:+ + T3:2:+"),
    ("hh.4z2.s1s2.plus.rs", 6, "T1:3:v2", "T2:3:v3", "T3:0:+ + T3:2:+"),
    ("hh.4z2.s1s2.minus", 6, "T1:3:v4", "T2:3:v2", "T3:0:- + T3:2:-"),
    ("hh.4z2.s1s2.minus.swap", 6, "T1:3:v3", "T2:3:v1", "T3:0:- + T3:2:-"),
    ("hh.4z2.s1s3.plus", 6, "T1:3:v1", "T3:3:v3", "T2:0:+ + T2:2:+"),
    ("hh.4z2.s1s3.plus.rs", 6, "T1:3:v4", "T3:3:v2", "T2:0:+ + T2:2:+"),
    ("hh.4z2.s1s3.minus", 6, "T1:3:v2", "T3:3:v1", "T2:0:- + T2:2:-"),
    ("hh.4z2.s1s3.minus.swap", 6, "T1:3:v3", "T3:3:v4", "T2:0:- + T2:2:-"),
    ("hh.4z2.s2s3.plus", 6, "T2:3:v3", "T3:3:v4", "T1:0:+ + T1:2:+"),
    ("hh.4z2.s2s3.plus.rs", 6, "T2:3:v2", "T3:3:v3", "T1:0:+ + T1:2:+"),
    ("hh.4z2.s2s3.minus", 6, "T2:3:v1", "T3:3:v2", "T1:0:- + T1:2:-"),
    ("hh.4z2.s2s3.minus.rs", 6, "T2:3:v4", "T3:3:v1", "T1:0:- + T1:2:-"),
    # half level x half level, k in 4Z
    ("hh.4z.first.k8", 8, "T1:4:v1", "T2:4:v1", "T3:0:+ + T3:2:+ + T3:4:v1"),
    ("hh.4z.first.k4", 4, "T1:2:v2", "T2:2:v3", "T3:0:+ + T3:2:v1"),
    ("hh.4z.second.k4", 4, "T1:2:v3", "T2:2:v1", "T3:0:- + T3:2:v3"),
    ("hh.4z.second.k8", 8, "T1:4:v4", "T2:4:v3", "T3:0:- + T3:2:- + T3:4:v3"),
    ("hh.4z.third.k4", 4, "T1:2:v1", "T2:2:v3", "T3:0:- + T3:2:v4"),
    ("hh.4z.third.k8", 8, "T1:4:v4", "T2:4:v2", "T3:0:- + T3:2:- + T3:4:v4"),
    ("hh.4z.fourth.k4", 4, "T1:2:v2", "T2:2:v2", "T3:0:+ + T3:2:v2"),
    ("hh.4z.fourth.k8", 8, "T1:4:v4", "T2:4:v1", "T3:0:+ + T3:2:+ + T3:4:v2"),
]
