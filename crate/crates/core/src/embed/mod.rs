//! Embedding engines: the greedy base-case embedding of a path power into a
//! sheared blow-up, the grey template extraction, the Moser–Tardos
//! resampler, and the exact constants chain.

mod base_case;
mod constants;
mod embedding;
mod lll;
mod template;

pub use base_case::{base_case_host, embed_base_case, BaseCaseEmbedding, BaseCaseError};
pub use constants::{
    clique_sizes, constants_chain, CliqueSize, CliqueSizes, ConstantsChain, ConstantsError, EXACT_T_MAX_BITS,
};
pub use embedding::{validate_embedding, Embedding, EmbeddingReport, EmbeddingViolation};
pub use lll::{lll_embed, LllError, LllInstance, LllOutcome, LllSummary};
pub use template::{
    aux_edge_colouring, check_template_containment, BaseLayout, TemplateReport, TemplateViolation, AUX_BLUE, AUX_GREY,
};
