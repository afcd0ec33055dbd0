use crate::error::{CoreError, Result};
use crate::support::Support;

/// Largest chain accepted by [`Chain::new`]; 2^21 configurations.
pub const DEFAULT_MAX_SITES: usize = 21;

/// Configurations with a fixed number of down spins, sorted by integer value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorBasis {
    pub n_sites: usize,
    pub n_magnons: usize,
    pub states: Vec<u64>,
}

impl SectorBasis {
    pub fn new(n_sites: usize, n_magnons: usize) -> Self {
        assert!(n_magnons <= n_sites && n_sites < 64);
        let mut states = Vec::with_capacity(binomial(n_sites, n_magnons));
        if n_magnons == 0 {
            states.push(0);
        } else {
            // Gosper's hack walks k-subsets in increasing order.
            let limit = 1u64 << n_sites;
            let mut c: u64 = (1u64 << n_magnons) - 1;
            while c < limit {
                states.push(c);
                let u = c & c.wrapping_neg();
                let v = c + u;
                c = v + (((v ^ c) / u) >> 2);
            }
        }
        Self { n_sites, n_magnons, states }
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn index_of(&self, config: u64) -> Option<usize> {
        self.states.binary_search(&config).ok()
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// One basis per magnon number `0..=2L+1`.
pub fn build_bases(l: usize) -> Result<Vec<SectorBasis>> {
    Ok(Chain::new(l)?.bases)
}

/// Sector-resolved basis of the chain `[-L, L]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    l: usize,
    bases: Vec<SectorBasis>,
    offsets: Vec<usize>,
}

impl Chain {
    pub fn new(l: usize) -> Result<Self> {
        Self::with_limit(l, DEFAULT_MAX_SITES)
    }

    pub fn with_limit(l: usize, max_sites: usize) -> Result<Self> {
        if l == 0 {
            return Err(CoreError::ZeroLength);
        }
        let n_sites = 2 * l + 1;
        if n_sites > max_sites.min(62) {
            return Err(CoreError::Capacity { n_sites, limit: max_sites.min(62) });
        }
        let bases: Vec<SectorBasis> = (0..=n_sites).map(|n| SectorBasis::new(n_sites, n)).collect();
        let mut offsets = Vec::with_capacity(bases.len() + 1);
        let mut acc = 0;
        for b in &bases {
            offsets.push(acc);
            acc += b.dim();
        }
        offsets.push(acc);
        Ok(Self { l, bases, offsets })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn n_sites(&self) -> usize {
        2 * self.l + 1
    }

    pub fn n_sectors(&self) -> usize {
        self.bases.len()
    }

    pub fn sector(&self, n: usize) -> &SectorBasis {
        &self.bases[n]
    }

    pub fn bases(&self) -> &[SectorBasis] {
        &self.bases
    }

    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(SectorBasis::dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    /// Offset of sector `n` in the sector-major global ordering.
    pub fn offset(&self, n: usize) -> usize {
        self.offsets[n]
    }

    pub fn full_support(&self) -> Support {
        Support::chain(self.l)
    }

    /// Bit position of a signed site.
    pub fn bit(&self, site: i64) -> Result<u32> {
        let k = site + self.l as i64;
        if k < 0 || k >= self.n_sites() as i64 {
            return Err(CoreError::SiteOutOfRange { site, l: self.l });
        }
        Ok(k as u32)
    }

    /// Sector and in-sector index of a configuration.
    pub fn locate(&self, config: u64) -> (usize, usize) {
        let n = config.count_ones() as usize;
        let idx = self.bases[n].index_of(config).expect("configuration outside chain");
        (n, idx)
    }

    /// Global sector-major index of a configuration.
    pub fn global_index(&self, config: u64) -> usize {
        let (n, i) = self.locate(config);
        self.offsets[n] + i
    }
}
