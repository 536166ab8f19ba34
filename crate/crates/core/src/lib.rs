//! Spectral rigidity toolkit.
//!
//! Builds `d`-dimensional frameworks and their stiffness matrices, certifies
//! lower bounds on the `d`-dimensional algebraic connectivity
//! `a_d(G) = sup_p λ_{C(d+1,2)+1}(L(G, p))` from vertex partitions, assembles
//! regular rigidity-expander families out of subdivided cubic bipartite
//! blocks, and pushes stiffness gaps up by gradient ascent over embeddings.
//!
//! Modules:
//!
//! * [`graph`]: graphs, partitions, named families, subdivision, random
//!   generators;
//! * [`framework`]: embeddings, rigidity/stiffness matrices, rank tests;
//! * [`spectra`]: eigensolves, Laplacians, algebraic connectivity;
//! * [`bounds`]: partition and limit-matrix bounds, closed forms;
//! * [`expander`]: the regular expander construction and its certificate;
//! * [`optimizer`]: stiffness-gap ascent;
//! * [`io`]: text formats for graphs, partitions and embeddings.

pub mod bounds;
pub mod error;
pub mod expander;
pub mod framework;
pub mod graph;
pub mod io;
pub mod optimizer;
pub mod seed;
pub mod spectra;

pub use error::{Error, Result};
pub use framework::Embedding;
pub use graph::{Graph, VertexPartition};
pub use spectra::{Gap, Spectrum};
