//! Kochen-Specker colouring: backtracking with unit propagation, plus an
//! independent certificate checker.

use super::rays::OrthogonalityStructure;

/// GREEN marks the one direction per triad whose squared spin component is 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Green,
    Red,
}

impl Color {
    /// `S²_n` for this colour.
    pub fn value(self) -> u8 {
        match self {
            Color::Green => 0,
            Color::Red => 1,
        }
    }
}

/// One colour per ray.
pub type KsColoring = Vec<Color>;

#[derive(Debug, Clone, PartialEq)]
pub enum KsVerdict {
    Sat(KsColoring),
    Unsat,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KsOutcome {
    pub verdict: KsVerdict,
    /// Branching decisions tried.
    pub nodes: u64,
}

impl KsOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self.verdict, KsVerdict::Sat(_))
    }
}

/// Why a colouring is not a valid KS colouring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    WrongLength {
        expected: usize,
        got: usize,
    },
    /// Triad without exactly one GREEN.
    Triad {
        triad: [usize; 3],
        greens: usize,
    },
    /// Orthogonal pair coloured GREEN-GREEN.
    Pair(usize, usize),
}

/// Checks a colouring against the structure's constraints directly: each
/// triad has exactly one GREEN and no orthogonal pair is GREEN-GREEN.
pub fn verify_coloring(structure: &OrthogonalityStructure, coloring: &[Color]) -> Result<(), Violation> {
    if coloring.len() != structure.rays.len() {
        return Err(Violation::WrongLength {
            expected: structure.rays.len(),
            got: coloring.len(),
        });
    }
    for &t in &structure.triads {
        let greens = t.iter().filter(|&&r| coloring[r] == Color::Green).count();
        if greens != 1 {
            return Err(Violation::Triad { triad: t, greens });
        }
    }
    for &(i, j) in &structure.pairs {
        if coloring[i] == Color::Green && coloring[j] == Color::Green {
            return Err(Violation::Pair(i, j));
        }
    }
    Ok(())
}

struct Solver<'a> {
    adj: Vec<Vec<usize>>,
    triads_of: Vec<Vec<usize>>,
    triads: &'a [[usize; 3]],
    assign: Vec<Option<Color>>,
    trail: Vec<usize>,
    order: Vec<usize>,
    nodes: u64,
}

impl Solver<'_> {
    fn set(&mut self, r: usize, c: Color, queue: &mut Vec<usize>) -> bool {
        match self.assign[r] {
            Some(existing) => existing == c,
            None => {
                self.assign[r] = Some(c);
                self.trail.push(r);
                queue.push(r);
                true
            }
        }
    }

    /// Unit propagation from the rays in `queue`; false on conflict.
    fn propagate(&mut self, mut queue: Vec<usize>) -> bool {
        while let Some(r) = queue.pop() {
            match self.assign[r] {
                Some(Color::Green) => {
                    for k in 0..self.adj[r].len() {
                        let n = self.adj[r][k];
                        if !self.set(n, Color::Red, &mut queue) {
                            return false;
                        }
                    }
                }
                Some(Color::Red) => {
                    for k in 0..self.triads_of[r].len() {
                        let t = self.triads[self.triads_of[r][k]];
                        let mut open = None;
                        let mut reds = 0;
                        let mut green = false;
                        for &m in &t {
                            match self.assign[m] {
                                Some(Color::Red) => reds += 1,
                                Some(Color::Green) => green = true,
                                None => open = Some(m),
                            }
                        }
                        if green {
                            continue;
                        }
                        if reds == 3 {
                            return false;
                        }
                        if reds == 2 {
                            let m = open.expect("one open member");
                            if !self.set(m, Color::Green, &mut queue) {
                                return false;
                            }
                        }
                    }
                }
                None => unreachable!("queued rays are assigned"),
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let r = self.trail.pop().expect("trail longer than mark");
            self.assign[r] = None;
        }
    }

    fn search(&mut self, depth: usize) -> bool {
        let Some(pos) = (depth..self.order.len()).find(|&p| self.assign[self.order[p]].is_none()) else {
            return true;
        };
        let r = self.order[pos];
        for c in [Color::Green, Color::Red] {
            self.nodes += 1;
            let mark = self.trail.len();
            let mut queue = Vec::new();
            if self.set(r, c, &mut queue) && self.propagate(queue) && self.search(pos + 1) {
                return true;
            }
            self.undo_to(mark);
        }
        false
    }
}

/// Searches for a KS colouring. Variables are branched in order of
/// descending degree in the orthogonality graph (ties by index), GREEN
/// first. A SAT answer is re-checked with [`verify_coloring`].
pub fn ks_color(structure: &OrthogonalityStructure) -> KsOutcome {
    let n = structure.rays.len();
    let adj = structure.neighbors();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| adj[b].len().cmp(&adj[a].len()).then(a.cmp(&b)));
    let mut solver = Solver {
        triads_of: structure.triads_of(),
        adj,
        triads: &structure.triads,
        assign: vec![None; n],
        trail: Vec::new(),
        order,
        nodes: 0,
    };
    if solver.search(0) {
        let coloring: KsColoring = solver.assign.iter().map(|c| c.unwrap_or(Color::Red)).collect();
        verify_coloring(structure, &coloring).expect("solver produced an invalid colouring");
        KsOutcome {
            verdict: KsVerdict::Sat(coloring),
            nodes: solver.nodes,
        }
    } else {
        KsOutcome {
            verdict: KsVerdict::Unsat,
            nodes: solver.nodes,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contextuality::rays::{orthogonality_structure, peres_rays, Ray3};
    use crate::tol;

    fn axes() -> OrthogonalityStructure {
        let rays = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]].map(|v| Ray3::new(v).unwrap());
        orthogonality_structure(&rays, tol::ORTH)
    }

    #[test]
    fn single_triad_is_colourable() {
        let s = axes();
        let out = ks_color(&s);
        let KsVerdict::Sat(c) = &out.verdict else {
            panic!("expected SAT")
        };
        assert_eq!(c.iter().filter(|&&x| x == Color::Green).count(), 1);
        assert!(verify_coloring(&s, c).is_ok());
    }

    #[test]
    fn checker_catches_violations() {
        let s = axes();
        use Color::*;
        assert_eq!(
            verify_coloring(&s, &[Red, Red, Red]),
            Err(Violation::Triad {
                triad: [0, 1, 2],
                greens: 0
            })
        );
        assert!(matches!(
            verify_coloring(&s, &[Green, Green, Red]),
            Err(Violation::Triad { .. })
        ));
        assert!(matches!(
            verify_coloring(&s, &[Green]),
            Err(Violation::WrongLength { .. })
        ));
        let pair = orthogonality_structure(
            &[Ray3::new([1.0, 0.0, 0.0]).unwrap(), Ray3::new([0.0, 1.0, 0.0]).unwrap()],
            tol::ORTH,
        );
        assert_eq!(verify_coloring(&pair, &[Green, Green]), Err(Violation::Pair(0, 1)));
        assert_eq!(verify_coloring(&pair, &[Red, Red]), Ok(()));
    }

    #[test]
    fn empty_structure_is_trivially_sat() {
        let s = orthogonality_structure(&[], tol::ORTH);
        assert!(ks_color(&s).is_sat());
    }

    #[test]
    fn peres_is_unsat() {
        let s = orthogonality_structure(&peres_rays(), tol::ORTH);
        let out = ks_color(&s);
        assert_eq!(out.verdict, KsVerdict::Unsat);
        assert!(out.nodes > 0);
    }

    #[test]
    fn exhaustive_oracle_on_small_sets() {
        // brute force over all 2^n colourings agrees with the solver
        let sets: Vec<Vec<[f64; 3]>> = vec![
            vec![[1., 0., 0.], [0., 1., 0.], [0., 0., 1.], [0., 1., 1.], [0., 1., -1.]],
            vec![
                [1., 0., 0.],
                [0., 1., 0.],
                [0., 0., 1.],
                [1., 1., 0.],
                [1., -1., 0.],
                [0., 1., 1.],
                [0., 1., -1.],
            ],
            vec![
                [1., 1., 0.],
                [1., -1., 0.],
                [0., 0., 1.],
                [1., 0., 0.],
                [0., 1., 0.],
                [1., 1., 1.],
            ],
        ];
        for set in sets {
            let rays: Vec<Ray3> = set.into_iter().map(|v| Ray3::new(v).unwrap()).collect();
            let s = orthogonality_structure(&rays, tol::ORTH);
            let n = rays.len();
            let any = (0u32..1 << n).any(|mask| {
                let c: Vec<Color> = (0..n)
                    .map(|i| if mask >> i & 1 == 1 { Color::Green } else { Color::Red })
                    .collect();
                verify_coloring(&s, &c).is_ok()
            });
            assert_eq!(ks_color(&s).is_sat(), any);
        }
    }
}
