use steinernet::generate::{random_instance, random_out_star};
use steinernet::solvers::{solve_bnb, solve_dst, solve_exhaustive};
use steinernet::dsn::{is_inclusion_minimal, validate};

#[test]
fn bnb_matches_exhaustive() {
    for seed in 0..200u64 {
        let n = 4 + (seed % 5) as usize;
        let m = (n * (n - 1)).min(8 + (seed % 13) as usize);
        let q = 2 + (seed % 3) as usize;
        let p = 1 + (seed % 4) as usize;
        let inst = random_instance(n, m, q, p, seed).unwrap();
        let oracle = solve_exhaustive(&inst).unwrap();
        let bnb = solve_bnb(&inst).unwrap();
        assert_eq!(bnb.cost(), oracle.cost(), "seed {seed}");
        if let Some(sol) = bnb.solution() {
            assert!(validate(&inst, sol).unwrap().is_valid());
            assert!(is_inclusion_minimal(&inst, sol).unwrap());
        }
    }
}

#[test]
fn dst_matches_exhaustive() {
    for seed in 0..100u64 {
        let n = 5 + (seed % 6) as usize;
        let m = (n * (n - 1)).min(10 + (seed % 11) as usize);
        let leaves = 1 + (seed % 4) as usize;
        let inst = random_out_star(n, m, leaves, seed).unwrap();
        let oracle = solve_exhaustive(&inst).unwrap();
        let dst = solve_dst(&inst).unwrap();
        assert_eq!(dst.cost(), oracle.cost(), "seed {seed}");
        if let Some(sol) = dst.solution() {
            assert!(validate(&inst, sol).unwrap().is_valid());
        }
    }
}
