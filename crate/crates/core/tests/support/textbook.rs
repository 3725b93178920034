//! Classic textbook LPs with optima from an independent solver run.

#![allow(dead_code)]

use tepkit_core::lpcore::{LinearProgram, Sense};

const INF: f64 = f64::INFINITY;

pub struct Textbook {
    pub name: &'static str,
    pub cost: &'static [f64],
    pub bounds: &'static [(f64, f64)],
    pub rows: &'static [(&'static [f64], Sense, f64)],
    pub optimum: f64,
}

impl Textbook {
    pub fn build(&self) -> LinearProgram {
        let mut lp = LinearProgram::new();
        let vars: Vec<_> = self
            .cost
            .iter()
            .zip(self.bounds)
            .map(|(&c, &(l, u))| lp.add_var(l, u, c))
            .collect();
        for (coeffs, sense, rhs) in self.rows {
            let entries = coeffs
                .iter()
                .zip(&vars)
                .filter(|(a, _)| **a != 0.0)
                .map(|(&a, &v)| (v, a))
                .collect();
            lp.add_row(entries, *sense, *rhs);
        }
        lp
    }
}

// Generated by an independent scipy/HiGHS run; optima frozen.
pub const SUITE: &[Textbook] = &[
    Textbook {
        name: "wyndor",
        cost: &[-3.0, -5.0],
        bounds: &[(0.0, INF), (0.0, INF)],
        rows: &[
            (&[1.0, 0.0], Sense::Le, 4.0),
            (&[0.0, 2.0], Sense::Le, 12.0),
            (&[3.0, 2.0], Sense::Le, 18.0),
        ],
        optimum: -36.0,
    },
    Textbook {
        name: "klee_minty_3",
        cost: &[-4.0, -2.0, -1.0],
        bounds: &[(0.0, INF), (0.0, INF), (0.0, INF)],
        rows: &[
            (&[1.0, 0.0, 0.0], Sense::Le, 5.0),
            (&[4.0, 1.0, 0.0], Sense::Le, 25.0),
            (&[8.0, 4.0, 1.0], Sense::Le, 125.0),
        ],
        optimum: -125.0,
    },
    Textbook {
        name: "beale_cycling",
        cost: &[0.0, 0.0, 0.0, -0.75, 20.0, -0.5, 6.0],
        bounds: &[(0.0, INF), (0.0, INF), (0.0, INF), (0.0, INF), (0.0, INF), (0.0, INF), (0.0, INF)],
        rows: &[
            (&[1.0, 0.0, 0.0, 0.25, -8.0, -1.0, 9.0], Sense::Eq, 0.0),
            (&[0.0, 1.0, 0.0, 0.5, -12.0, -0.5, 3.0], Sense::Eq, 0.0),
            (&[0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0], Sense::Eq, 1.0),
        ],
        optimum: -1.25,
    },
    Textbook {
        name: "transport_2x3",
        cost: &[8.0, 6.0, 10.0, 9.0, 12.0, 13.0],
        bounds: &[(0.0, INF), (0.0, INF), (0.0, INF), (0.0, INF), (0.0, INF), (0.0, INF)],
        rows: &[
            (&[1.0, 1.0, 1.0, 0.0, 0.0, 0.0], Sense::Le, 35.0),
            (&[0.0, 0.0, 0.0, 1.0, 1.0, 1.0], Sense::Le, 50.0),
            (&[1.0, 0.0, 0.0, 1.0, 0.0, 0.0], Sense::Ge, 45.0),
            (&[0.0, 1.0, 0.0, 0.0, 1.0, 0.0], Sense::Ge, 20.0),
            (&[0.0, 0.0, 1.0, 0.0, 0.0, 1.0], Sense::Ge, 15.0),
        ],
        optimum: 675.0,
    },
    Textbook {
        name: "assignment_3x3",
        cost: &[4.0, 1.0, 3.0, 2.0, 0.0, 5.0, 3.0, 2.0, 2.0],
        bounds: &[(0.0, INF), (0.0, INF), (0.0, INF), (0.0, INF), (0.0, INF), (0.0, INF), (0.0, INF), (0.0, INF), (0.0, INF)],
        rows: &[
            (&[1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0], Sense::Eq, 1.0),
            (&[0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0], Sense::Eq, 1.0),
            (&[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 1.0], Sense::Eq, 1.0),
            (&[1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0], Sense::Eq, 1.0),
            (&[0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0], Sense::Eq, 1.0),
            (&[0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0], Sense::Eq, 1.0),
        ],
        optimum: 5.0,
    },
    Textbook {
        name: "diet",
        cost: &[0.6, 0.35, 0.45],
        bounds: &[(0.0, INF), (0.0, INF), (0.0, INF)],
        rows: &[
            (&[5.0, 7.0, 3.0], Sense::Ge, 8.0),
            (&[4.0, 2.0, 6.0], Sense::Ge, 15.0),
            (&[2.0, 1.0, 1.0], Sense::Ge, 3.0),
        ],
        optimum: 1.2374999999999998,
    },
    Textbook {
        name: "free_vars",
        cost: &[1.0, -1.0, 0.0],
        bounds: &[(-INF, INF), (-INF, 10.0), (-INF, INF)],
        rows: &[
            (&[1.0, 1.0, 1.0], Sense::Eq, 4.0),
            (&[1.0, -1.0, 0.0], Sense::Ge, -2.0),
            (&[0.0, 1.0, -1.0], Sense::Le, 1.0),
        ],
        optimum: -2.0,
    },
    Textbook {
        name: "negative_bounds",
        cost: &[2.0, 3.0, -1.0],
        bounds: &[(-5.0, 5.0), (-2.0, 3.0), (-1.0, 2.0)],
        rows: &[
            (&[1.0, 1.0, 1.0], Sense::Ge, -3.0),
            (&[1.0, -2.0, 0.0], Sense::Le, 4.0),
        ],
        optimum: -14.0,
    },
    Textbook {
        name: "production",
        cost: &[-20.0, -30.0, -25.0],
        bounds: &[(0.0, INF), (0.0, INF), (0.0, INF)],
        rows: &[
            (&[1.0, 2.0, 1.0], Sense::Le, 40.0),
            (&[2.0, 1.0, 3.0], Sense::Le, 60.0),
            (&[1.0, 1.0, 1.0], Sense::Le, 30.0),
        ],
        optimum: -760.0,
    },
    Textbook {
        name: "max_flow",
        cost: &[0.0, 0.0, 0.0, 0.0, 0.0, -1.0, -1.0],
        bounds: &[(0.0, 10.0), (0.0, 5.0), (0.0, 15.0), (0.0, 4.0), (0.0, 10.0), (0.0, INF), (0.0, INF)],
        rows: &[
            (&[1.0, 0.0, 0.0, 0.0, 0.0, -1.0, 0.0], Sense::Eq, 0.0),
            (&[0.0, 1.0, 0.0, 0.0, 0.0, 0.0, -1.0], Sense::Eq, 0.0),
            (&[1.0, 0.0, -1.0, -1.0, 0.0, 0.0, 0.0], Sense::Eq, 0.0),
            (&[0.0, 1.0, 1.0, 0.0, -1.0, 0.0, 0.0], Sense::Eq, 0.0),
        ],
        optimum: -14.0,
    },
    Textbook {
        name: "shortest_path",
        cost: &[2.0, 4.0, 1.0, 7.0, 3.0],
        bounds: &[(0.0, INF), (0.0, INF), (0.0, INF), (0.0, INF), (0.0, INF)],
        rows: &[
            (&[1.0, 1.0, 0.0, 0.0, 0.0], Sense::Eq, 1.0),
            (&[-1.0, 0.0, 1.0, 1.0, 0.0], Sense::Eq, 0.0),
            (&[0.0, -1.0, -1.0, 0.0, 1.0], Sense::Eq, 0.0),
            (&[0.0, 0.0, 0.0, -1.0, -1.0], Sense::Eq, -1.0),
        ],
        optimum: 6.0,
    },
    Textbook {
        name: "blending",
        cost: &[0.13, 0.08],
        bounds: &[(0.0, INF), (0.0, INF)],
        rows: &[
            (&[1.0, 1.0], Sense::Eq, 100.0),
            (&[0.1, 0.2], Sense::Ge, 8.0),
            (&[0.08, 0.1], Sense::Ge, 6.0),
            (&[0.001, 0.005], Sense::Le, 2.0),
            (&[0.002, 0.005], Sense::Le, 0.4),
        ],
        optimum: 9.666666666666668,
    },
    Textbook {
        name: "mixed_senses",
        cost: &[3.0, 2.0, 4.0],
        bounds: &[(0.0, INF), (0.0, INF), (0.0, INF)],
        rows: &[
            (&[1.0, 1.0, 2.0], Sense::Ge, 4.0),
            (&[2.0, 0.0, 3.0], Sense::Ge, 5.0),
            (&[2.0, 1.0, 3.0], Sense::Eq, 7.0),
            (&[1.0, 0.0, 0.0], Sense::Le, 3.0),
        ],
        optimum: 9.333333333333334,
    },
    Textbook {
        name: "redundant_equalities",
        cost: &[1.0, 2.0, 3.0],
        bounds: &[(0.0, INF), (0.0, INF), (0.0, INF)],
        rows: &[
            (&[1.0, 1.0, 1.0], Sense::Eq, 6.0),
            (&[2.0, 2.0, 2.0], Sense::Eq, 12.0),
            (&[1.0, -1.0, 0.0], Sense::Eq, 0.0),
            (&[1.0, 0.0, -1.0], Sense::Le, 0.0),
        ],
        optimum: 12.0,
    },
    Textbook {
        name: "fractional_knapsack",
        cost: &[-60.0, -100.0, -120.0],
        bounds: &[(0.0, 1.0), (0.0, 1.0), (0.0, 1.0)],
        rows: &[
            (&[10.0, 20.0, 30.0], Sense::Le, 50.0),
        ],
        optimum: -240.0,
    },
    Textbook {
        name: "inventory",
        cost: &[5.0, 6.0, 7.0, 1.0, 1.0, 1.0],
        bounds: &[(0.0, 50.0), (0.0, 50.0), (0.0, 50.0), (0.0, INF), (0.0, INF), (0.0, INF)],
        rows: &[
            (&[1.0, 0.0, 0.0, -1.0, 0.0, 0.0], Sense::Eq, 40.0),
            (&[0.0, 1.0, 0.0, 1.0, -1.0, 0.0], Sense::Eq, 60.0),
            (&[0.0, 0.0, 1.0, 0.0, 1.0, -1.0], Sense::Eq, 30.0),
            (&[0.0, 0.0, 0.0, 0.0, 0.0, 1.0], Sense::Eq, 0.0),
        ],
        optimum: 770.0,
    },
    Textbook {
        name: "min_cost_flow",
        cost: &[1.0, 3.0, 2.0, 1.0, 4.0],
        bounds: &[(0.0, 8.0), (0.0, INF), (0.0, 5.0), (0.0, INF), (0.0, INF)],
        rows: &[
            (&[1.0, 1.0, 0.0, 0.0, 0.0], Sense::Eq, 10.0),
            (&[-1.0, 0.0, 1.0, 1.0, 0.0], Sense::Eq, 0.0),
            (&[0.0, -1.0, -1.0, 0.0, 1.0], Sense::Eq, -4.0),
            (&[0.0, 0.0, 0.0, -1.0, -1.0], Sense::Eq, -6.0),
        ],
        optimum: 24.0,
    },
    Textbook {
        name: "l1_regression",
        cost: &[0.0, 0.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0],
        bounds: &[(-INF, INF), (-INF, INF), (0.0, INF), (0.0, INF), (0.0, INF), (0.0, INF), (0.0, INF), (0.0, INF), (0.0, INF), (0.0, INF)],
        rows: &[
            (&[1.0, 0.0, 1.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0], Sense::Eq, 1.0),
            (&[1.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0], Sense::Eq, 3.0),
            (&[1.0, 2.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, -1.0, 0.0], Sense::Eq, 2.0),
            (&[1.0, 3.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, -1.0], Sense::Eq, 5.0),
        ],
        optimum: 2.333333333333333,
    },
    Textbook {
        name: "alt_optima",
        cost: &[-1.0, -1.0],
        bounds: &[(0.0, INF), (0.0, INF)],
        rows: &[
            (&[1.0, 1.0], Sense::Le, 4.0),
            (&[1.0, 0.0], Sense::Le, 3.0),
            (&[0.0, 1.0], Sense::Le, 3.0),
        ],
        optimum: -4.0,
    },
    Textbook {
        name: "scaled",
        cost: &[1000.0, 0.001, 1.0],
        bounds: &[(0.0, INF), (0.0, INF), (0.0, INF)],
        rows: &[
            (&[0.001, 1.0, 0.0], Sense::Ge, 2.0),
            (&[1.0, 0.0, 1000.0], Sense::Ge, 5000.0),
            (&[1.0, 1.0, 1.0], Sense::Le, 10000.0),
        ],
        optimum: 5.002,
    },
];
