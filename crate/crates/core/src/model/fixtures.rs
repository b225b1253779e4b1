//! Small hand-checkable instances shared by tests, docs and the CLI.

use super::{ratio, Instance, Rational};

/// One unit cache, one user preferring `s1` (3/5) over `s2` (2/5).
pub fn ex1() -> Instance {
    Instance::builder()
        .content("s1", 1u32)
        .content("s2", 1u32)
        .cache("c1", 1u32)
        .user("u1", Rational::one(), [("s1", ratio(3, 5)), ("s2", ratio(2, 5))])
        .edge("c1", "u1")
        .build()
        .expect("ex1 is valid")
}

/// Two caches (capacities 2 and 1) serving one user; `s1` has size 2.
pub fn ex2() -> Instance {
    Instance::builder()
        .content("s1", 2u32)
        .content("s2", 1u32)
        .cache("c1", 2u32)
        .cache("c2", 1u32)
        .user("u1", Rational::one(), [("s1", ratio(1, 2)), ("s2", ratio(1, 2))])
        .edge("c1", "u1")
        .edge("c2", "u1")
        .build()
        .expect("ex2 is valid")
}

/// One unit cache serving a weight-1 user wanting `s1` and a weight-2 user
/// wanting `s2`.
pub fn ex3() -> Instance {
    Instance::builder()
        .content("s1", 1u32)
        .content("s2", 1u32)
        .cache("c1", 1u32)
        .user("u1", Rational::one(), [("s1", Rational::one())])
        .user("u2", ratio(2, 1), [("s2", Rational::one())])
        .edge("c1", "u1")
        .edge("c1", "u2")
        .build()
        .expect("ex3 is valid")
}
