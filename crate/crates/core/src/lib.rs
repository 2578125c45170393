//! Finite heaps, trusses and modules over trusses as explicit tables, with
//! engines that check exact-sequence theorems on concrete instances.

pub mod abs;
pub mod corpus;
pub mod diagram;
pub mod error;
pub mod exact;
pub mod heap;
pub mod hom;
pub mod io;
pub mod module;
pub mod oracle;
pub mod partition;
pub mod ring_module;
pub mod suite;
pub mod table;
pub mod truss;

pub use error::{Error, Law, LawViolation, Result, Verdict};
pub use heap::{FiniteGroup, FiniteHeap, HeapMorphism, SubHeap};
pub use module::{FiniteModule, ModuleMorphism, Submodule};
pub use partition::Partition;
pub use truss::{FiniteRing, FiniteTruss, TrussMorphism};
pub use ring_module::{FiniteRingModule, RingModuleMorphism, TFunctor};
pub use abs::{abs_morphism, abs_object, AbsImage};
pub use hom::{enumerate_hom, hom_heap, hom_module, HomSearch, HomSet, DEFAULT_HOM_BUDGET};
pub use diagram::{Grid3x3, Row2x5, Ses, SnakeDiagram, TwoRow};
pub use exact::{is_exact_at, is_short_exact, ShortExactReport, ShortExactSequence};
