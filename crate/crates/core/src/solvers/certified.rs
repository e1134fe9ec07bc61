use crate::dsn::{minimize, DsnInstance};
use crate::error::Result;
use crate::structure::{certify_treewidth_bound, TreewidthCertificate};

use super::{solve_bnb, solve_dst, SolveResult};

const DST_TERMINAL_CAP: usize = 16;

/// Solves exactly (the DST program for small out-stars, branch and bound
/// otherwise), minimizes, and certifies the structure of the optimum.
pub fn solve_with_certificate(inst: &DsnInstance, declared_genus: u32) -> Result<(SolveResult, Option<TreewidthCertificate>)> {
    let mut result = if inst.out_star_root().is_some() && inst.terminal_count() <= DST_TERMINAL_CAP {
        solve_dst(inst)?
    } else {
        solve_bnb(inst)?
    };
    let certificate = match result.solution() {
        Some(sol) => {
            let sol = minimize(inst, sol)?;
            let cert = certify_treewidth_bound(inst, &sol, declared_genus)?;
            result.replace_solution(sol);
            Some(cert)
        }
        None => None,
    };
    Ok((result, certificate))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::grid_instance;
    use crate::graph::WeightedDigraph;

    #[test]
    fn grid_scss_certificate() {
        let inst = grid_instance(3, 3, 3, 7).unwrap();
        let (res, cert) = solve_with_certificate(&inst, 0).unwrap();
        assert!(res.is_feasible());
        let cert = cert.unwrap();
        assert!(cert.solution.exact);
        assert!(cert.solution.width <= 3);
        assert!(cert.ratio <= 1.0);
    }

    #[test]
    fn single_request_has_width_one() {
        let g = WeightedDigraph::from_unit_arcs(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let inst = DsnInstance::new(g, [(0, 2)]).unwrap();
        let (res, cert) = solve_with_certificate(&inst, 0).unwrap();
        assert_eq!(res.cost(), Some(crate::Weight::integer(2)));
        assert_eq!(cert.unwrap().solution.width, 1);
    }

    #[test]
    fn infeasible_has_no_certificate() {
        let g = WeightedDigraph::from_unit_arcs(2, [(0, 1)]).unwrap();
        let inst = DsnInstance::new(g, [(1, 0)]).unwrap();
        let (res, cert) = solve_with_certificate(&inst, 0).unwrap();
        assert!(!res.is_feasible());
        assert!(cert.is_none());
    }
}
