//! Seeded random super-polynomials for property checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::isotypic::BidegreeSlice;
use crate::scalars::Cyclotomic;
use crate::supergebra::{Bidegree, Flavor, SuperPoly};

pub const MAX_XDEG: u32 = 4;

#[derive(Clone, Debug)]
pub struct SuperRng {
    rng: ChaCha8Rng,
    n: usize,
    conductor: u32,
}

impl SuperRng {
    pub fn new(seed: u64, n: usize, conductor: u32) -> Self {
        SuperRng {
            rng: ChaCha8Rng::seed_from_u64(seed),
            n,
            conductor,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.rng.gen_range(0..len)
    }

    /// A nonzero integer in `-3..=3`.
    pub fn small_int(&mut self) -> i64 {
        *[-3i64, -2, -1, 1, 2, 3].choose(&mut self.rng).expect("nonempty")
    }

    /// A nonzero coefficient; off the rationals it may involve one power of `zeta`.
    pub fn coefficient(&mut self, rational: bool) -> Cyclotomic {
        let m = self.conductor;
        let base = Cyclotomic::from_int(m, self.small_int());
        if rational || m <= 2 || self.rng.gen_bool(0.5) {
            return base;
        }
        let k = self.rng.gen_range(1..m) as i64;
        let extra = Cyclotomic::zeta_pow(m, k).scale(&crate::scalars::int(self.small_int()));
        let c = &base + &extra;
        if c.is_zero() {
            base
        } else {
            c
        }
    }

    pub fn flavor(&mut self) -> Flavor {
        if self.rng.gen_bool(0.5) {
            Flavor::DualExterior
        } else {
            Flavor::PrimalExterior
        }
    }

    pub fn bidegree(&mut self, max_q: u32) -> Bidegree {
        Bidegree::new(
            self.rng.gen_range(0..=max_q),
            self.rng.gen_range(0..=self.n as u32),
        )
    }

    /// Random nonzero element of one bidegree with at most `terms` monomials.
    pub fn bihomogeneous(&mut self, flavor: Flavor, b: Bidegree, terms: usize, rational: bool) -> SuperPoly {
        let slice = BidegreeSlice::new(self.n, b, flavor);
        let mut f = SuperPoly::zero(self.n, flavor, self.conductor);
        if slice.dim() == 0 {
            return f;
        }
        while f.is_zero() {
            for _ in 0..terms.max(1) {
                let k = self.index(slice.dim());
                let c = self.coefficient(rational);
                f.add_term(slice.monomials()[k].clone(), c);
            }
        }
        f
    }

    /// Random element mixing up to three bidegrees with x-degree at most `max_q`.
    pub fn superpoly(&mut self, flavor: Flavor, max_q: u32, rational: bool) -> SuperPoly {
        let pieces = self.rng.gen_range(1..=3);
        let mut f = SuperPoly::zero(self.n, flavor, self.conductor);
        for _ in 0..pieces {
            let b = self.bidegree(max_q);
            let terms = self.rng.gen_range(1..=3);
            f = &f + &self.bihomogeneous(flavor, b, terms, rational);
        }
        f
    }

    /// Random x-only polynomial with rational coefficients.
    pub fn x_poly(&mut self, max_q: u32) -> SuperPoly {
        let mut f = SuperPoly::zero(self.n, Flavor::DualExterior, self.conductor);
        for _ in 0..self.rng.gen_range(1..=3) {
            let q = self.rng.gen_range(0..=max_q);
            f = &f + &self.bihomogeneous(Flavor::DualExterior, Bidegree::new(q, 0), 2, true);
        }
        f
    }
}
