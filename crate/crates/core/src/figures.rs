//! Worked configurations from the literature on `sV`, kept as regression
//! fixtures. Coordinates are given as `(level, index)` pairs per edge.

use crate::dyadic::{Brick, Covering, DyadicInterval};
use crate::groupsv::DyadicMap;
use crate::steinlocal::Merging;

fn iv((l, k): (u32, u64)) -> DyadicInterval {
    DyadicInterval::new(l, k).expect("fixture interval")
}

/// A brick of `I^2(block)` from `(level, index)` per axis.
pub fn rect(block: u32, x: (u32, u64), y: (u32, u64)) -> Brick {
    Brick::new(block, vec![iv(x), iv(y)])
}

fn labeled(block: u32, label: u32, x: (u32, u64), y: (u32, u64)) -> Brick {
    rect(block, x, y).with_label(label)
}

/// Two vertical halves `[0,½)×[0,1)`, `[½,1)×[0,1)` of `I^2`.
pub fn vertical_halves() -> Covering {
    Covering::new(2, 1, vec![rect(1, (1, 0), (0, 0)), rect(1, (1, 1), (0, 0))]).expect("fixture")
}

/// Two horizontal halves `[0,1)×[0,½)`, `[0,1)×[½,1)` of `I^2`.
pub fn horizontal_halves() -> Covering {
    Covering::new(2, 1, vec![rect(1, (0, 0), (1, 0)), rect(1, (0, 0), (1, 1))]).expect("fixture")
}

/// The four quarters of `I^2`.
pub fn quarters() -> Covering {
    Covering::maximal_elementary(2, 1)
}

/// Left panel of the elementary-core figure: seven bricks whose core is
/// the four quarters.
pub fn core_left_panel() -> Covering {
    Covering::new(
        2,
        1,
        vec![
            rect(1, (1, 0), (2, 2)),
            rect(1, (1, 0), (2, 3)),
            rect(1, (1, 1), (1, 1)),
            rect(1, (1, 0), (1, 0)),
            rect(1, (1, 1), (2, 1)),
            rect(1, (2, 2), (2, 0)),
            rect(1, (2, 3), (2, 0)),
        ],
    )
    .expect("fixture")
}

/// Middle panel: five bricks whose core is the left half plus the two
/// right quarters.
pub fn core_middle_panel() -> Covering {
    Covering::new(
        2,
        1,
        vec![
            rect(1, (1, 0), (0, 0)),
            rect(1, (1, 1), (1, 1)),
            rect(1, (2, 3), (1, 0)),
            rect(1, (2, 2), (2, 0)),
            rect(1, (2, 2), (2, 1)),
        ],
    )
    .expect("fixture")
}

/// The three-brick core of [`core_middle_panel`].
pub fn core_middle_expected() -> Covering {
    Covering::new(2, 1, vec![rect(1, (1, 0), (0, 0)), rect(1, (1, 1), (1, 1)), rect(1, (1, 1), (1, 0))])
        .expect("fixture")
}

/// Right panel: five bricks whose core is the two horizontal halves.
pub fn core_right_panel() -> Covering {
    Covering::new(
        2,
        1,
        vec![
            rect(1, (0, 0), (1, 1)),
            rect(1, (0, 0), (2, 1)),
            rect(1, (2, 0), (2, 0)),
            rect(1, (2, 1), (2, 0)),
            rect(1, (1, 1), (2, 0)),
        ],
    )
    .expect("fixture")
}

/// `f₁ : I^2(1) → I^2(1)`, five labeled bricks on each side.
pub fn f1() -> DyadicMap {
    let domain = Covering::new(
        2,
        1,
        vec![
            labeled(1, 1, (1, 0), (2, 3)),
            labeled(1, 2, (2, 0), (2, 2)),
            labeled(1, 3, (2, 1), (2, 2)),
            labeled(1, 4, (1, 1), (1, 1)),
            labeled(1, 5, (0, 0), (1, 0)),
        ],
    )
    .expect("fixture");
    let codomain = Covering::new(
        2,
        1,
        vec![
            labeled(1, 1, (1, 0), (2, 2)),
            labeled(1, 2, (1, 0), (1, 0)),
            labeled(1, 4, (1, 0), (2, 3)),
            labeled(1, 3, (2, 2), (0, 0)),
            labeled(1, 5, (2, 3), (0, 0)),
        ],
    )
    .expect("fixture");
    DyadicMap::from_labels(&domain, &codomain, &identity_pairs(5)).expect("fixture")
}

/// `f₂ : I^2(1) → I^2(2)`, obtained from `f₁` by cutting its codomain
/// along the horizontal midline.
pub fn f2() -> DyadicMap {
    let domain = Covering::new(
        2,
        1,
        vec![
            labeled(1, 1, (1, 0), (2, 3)),
            labeled(1, 2, (2, 0), (2, 2)),
            labeled(1, 3, (2, 1), (3, 5)),
            labeled(1, 6, (2, 1), (3, 4)),
            labeled(1, 4, (1, 1), (1, 1)),
            labeled(1, 7, (0, 0), (2, 0)),
            labeled(1, 5, (0, 0), (2, 1)),
        ],
    )
    .expect("fixture");
    let codomain = Covering::new(
        2,
        2,
        vec![
            labeled(1, 4, (1, 0), (1, 1)),
            labeled(1, 1, (1, 0), (1, 0)),
            labeled(1, 3, (2, 2), (0, 0)),
            labeled(1, 5, (2, 3), (0, 0)),
            labeled(2, 2, (1, 0), (0, 0)),
            labeled(2, 6, (2, 2), (0, 0)),
            labeled(2, 7, (2, 3), (0, 0)),
        ],
    )
    .expect("fixture");
    DyadicMap::from_labels(&domain, &codomain, &identity_pairs(7)).expect("fixture")
}

/// `f₂` with its two codomain blocks interchanged.
pub fn f2_swapped() -> DyadicMap {
    f2().permute_codomain(&[2, 1]).expect("fixture")
}

fn identity_pairs(n: u32) -> Vec<(u32, u32)> {
    (1..=n).map(|i| (i, i)).collect()
}

/// The very elementary merging of five labeled bricks drawn next to its
/// oriented matching: `{2,5}` stacked (5 below 2), `{4}` alone, `{1,3}`
/// side by side (1 left of 3).
pub fn ve_example() -> Merging {
    Merging::new(
        2,
        5,
        vec![
            (vec![1, 3], vec![labeled(1, 1, (1, 0), (0, 0)), labeled(1, 3, (1, 1), (0, 0))]),
            (vec![2, 5], vec![labeled(1, 5, (0, 0), (1, 0)), labeled(1, 2, (0, 0), (1, 1))]),
            (vec![4], vec![labeled(1, 4, (0, 0), (0, 0))]),
        ],
    )
    .expect("fixture")
}

/// Grid merging of labels `1..=4` into one block: 1 top-left, 2 top-right,
/// 3 bottom-left, 4 bottom-right.
pub fn grid_merging() -> Merging {
    Merging::new(2, 4, vec![(vec![1, 2, 3, 4], grid_block(1, 2, 3, 4))]).expect("fixture")
}

/// [`grid_merging`] cut along the horizontal midline: `{1,2}` and `{3,4}`,
/// each a pair of vertical halves.
pub fn grid_merging_split() -> Merging {
    Merging::new(
        2,
        4,
        vec![
            (vec![1, 2], vec![labeled(1, 1, (1, 0), (0, 0)), labeled(1, 2, (1, 1), (0, 0))]),
            (vec![3, 4], vec![labeled(1, 3, (1, 0), (0, 0)), labeled(1, 4, (1, 1), (0, 0))]),
        ],
    )
    .expect("fixture")
}

fn grid_block(tl: u32, tr: u32, bl: u32, br: u32) -> Vec<Brick> {
    vec![
        labeled(1, tl, (1, 0), (1, 1)),
        labeled(1, tr, (1, 1), (1, 1)),
        labeled(1, bl, (1, 0), (1, 0)),
        labeled(1, br, (1, 1), (1, 0)),
    ]
}

/// The two-brick configuration used to build up from `VE₆` to `E₆`: a grid
/// block `{1,2,3,4}` and the highlighted block `B = {5,6}` of vertical
/// halves.
pub fn two_bricks_example() -> Merging {
    Merging::new(
        2,
        6,
        vec![
            (vec![1, 2, 3, 4], grid_block(1, 2, 3, 4)),
            (vec![5, 6], vec![labeled(1, 5, (1, 0), (0, 0)), labeled(1, 6, (1, 1), (0, 0))]),
        ],
    )
    .expect("fixture")
}
