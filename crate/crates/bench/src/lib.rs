//! Fixtures shared by the benchmarks.

use nilp2_core::groups::{extraspecial, heisenberg, ut_group, DEFAULT_TABLE_BUDGET};
use nilp2_core::{Class2Group, TableGroup};

pub fn extraspecial_3_2() -> Class2Group {
    extraspecial(3, 2).expect("valid parameters")
}

pub fn heisenberg_3_2_1() -> Class2Group {
    heisenberg(3, 2, 1).expect("valid parameters")
}

pub fn ut(p: u32, dim: usize) -> TableGroup {
    ut_group(p, dim, DEFAULT_TABLE_BUDGET).expect("within budget")
}
