use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::system::RootType;
use crate::error::{Error, Result};
use crate::finite::field::is_prime;

/// Which group of a given type: simply connected, adjoint, or an
/// intermediate quotient with the given center order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Isogeny {
    SimplyConnected,
    Adjoint,
    CenterOrder(u64),
}

impl std::str::FromStr for Isogeny {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sc" | "simply_connected" | "simply-connected" => Ok(Isogeny::SimplyConnected),
            "ad" | "adjoint" => Ok(Isogeny::Adjoint),
            other => other
                .trim_start_matches("z=")
                .parse()
                .map(Isogeny::CenterOrder)
                .map_err(|_| Error::InvalidArgument(format!("unknown isogeny {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsogenyData {
    pub root_type: RootType,
    pub rank: usize,
    /// Center order `z` of the chosen group.
    pub center_order: u64,
    /// Product `r` of the bad primes.
    pub bad_prime_product: u64,
}

/// Order of the center of the simply connected group.
pub fn simply_connected_center_order(root_type: RootType, rank: usize) -> u64 {
    match root_type {
        RootType::A => rank as u64 + 1,
        RootType::B | RootType::C | RootType::E7 => 2,
        RootType::D => 4,
        RootType::E6 => 3,
        RootType::E8 | RootType::F4 | RootType::G2 => 1,
    }
}

/// Product of the bad primes (Springer-Steinberg).
pub fn bad_prime_product(root_type: RootType) -> u64 {
    match root_type {
        RootType::A => 1,
        RootType::B | RootType::C | RootType::D => 2,
        RootType::G2 | RootType::F4 | RootType::E6 | RootType::E7 => 6,
        RootType::E8 => 30,
    }
}

impl IsogenyData {
    pub fn new(root_type: RootType, rank: usize, isogeny: Isogeny) -> Result<Self> {
        root_type.check_rank(rank)?;
        let sc = simply_connected_center_order(root_type, rank);
        let center_order = match isogeny {
            Isogeny::SimplyConnected => sc,
            Isogeny::Adjoint => 1,
            Isogeny::CenterOrder(z) if z >= 1 && sc.is_multiple_of(z) => z,
            Isogeny::CenterOrder(z) => {
                return Err(Error::InvalidArgument(format!(
                    "center order {z} does not divide {sc} for {root_type}{rank}"
                )))
            }
        };
        Ok(IsogenyData {
            root_type,
            rank,
            center_order,
            bad_prime_product: bad_prime_product(root_type),
        })
    }
}

/// Whether `x -> x^m` is surjective: `gcd(m, p r z) = 1`, where `p` is the
/// characteristic exponent (1 in characteristic zero).
pub fn power_map_surjective(root_type: RootType, rank: usize, isogeny: Isogeny, p: u64, m: u64) -> Result<bool> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    if p != 1 && !is_prime(p) {
        return Err(Error::InvalidArgument(format!("characteristic exponent {p} is neither 1 nor prime")));
    }
    let data = IsogenyData::new(root_type, rank, isogeny)?;
    Ok(m.gcd(&(p * data.bad_prime_product * data.center_order)) == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!(!power_map_surjective(RootType::A, 1, Isogeny::SimplyConnected, 1, 2).unwrap());
        assert!(power_map_surjective(RootType::E8, 8, Isogeny::Adjoint, 1, 7).unwrap());
        assert!(power_map_surjective(RootType::D, 5, Isogeny::SimplyConnected, 3, 1).unwrap());
        assert!(power_map_surjective(RootType::A, 1, Isogeny::Adjoint, 1, 2).unwrap());
    }

    #[test]
    fn invalid() {
        assert!(power_map_surjective(RootType::A, 3, Isogeny::CenterOrder(3), 1, 5).is_err());
        assert!(power_map_surjective(RootType::A, 3, Isogeny::CenterOrder(2), 1, 5).is_ok());
        assert!(power_map_surjective(RootType::A, 3, Isogeny::Adjoint, 4, 5).is_err());
        assert!(power_map_surjective(RootType::A, 3, Isogeny::Adjoint, 1, 0).is_err());
        assert_eq!("z=2".parse::<Isogeny>().unwrap(), Isogeny::CenterOrder(2));
    }
}
