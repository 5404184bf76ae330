//! Structural tilesets and coordinate machinery: Robinson's tiles, Kari's
//! NW-deterministic variant and its East-deterministic shear, the breaker,
//! counter and copy layers combined into `Y_k`, and the reflected Gray
//! folding.

mod gray;
mod layers;
mod robinson;

pub use gray::{gray_fold, GrayFold};
pub use layers::{
    breaker_layer, breaker_token, copy_layer, counter_cells, counter_layer, counter_value, post_layer, y_k, y_k_over, CounterCell,
    LayerBundle, Transducer, POST_BREAKER, POST_FIRST, POST_OTHER, YK_A, YK_C, YK_POST, YK_T,
};
pub use robinson::{east_deterministic_base, kari_nw, robinson, robinson_patch};
