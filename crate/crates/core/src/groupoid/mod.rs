//! Presentations of walk groups and fundamental groups, and the structural
//! checks built on them.

mod naturality;
mod presentation;
mod product;
mod reflexive;
pub mod smith;
mod vankampen;
mod word;

pub use naturality::{check_naturality, is_spider_pair, naturality_path, naturality_sides};
pub use presentation::{
    abelian_invariants, diamond_relators, fundamental_group_presentation, walk_group_presentation,
    word_of_walk, AbelianInvariants, Abelianization, Generator, GeneratorSource, Presentation,
    SpanningForest,
};
pub(crate) use presentation::{abelianize, closed_four_walks, format_image, groupoid_relators, WordMap};
pub use product::{verify_product_pullback, LiftWitness, ProductReport};
pub use reflexive::{verify_reflexive_split, ReflexiveReport};
pub use vankampen::{check_cover, van_kampen, van_kampen_presentation, DiamondRule, VanKampen};
pub use word::{Letter, Word};
