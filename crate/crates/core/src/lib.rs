//! Graph features, maximum-clique solvers, hardness labeling, classifiers
//! and association-rule mining for studying instance hardness.
//!
//! Numeric kernels (matrices, spectra, features, statistics, scaling) are
//! generic over [`scalar::Scalar`]; the aliases below fix them to `f64`.

pub mod arm;
pub mod dataset;
pub mod features;
pub mod graph;
pub mod ml;
pub mod scalar;
pub mod solvers;
pub mod stats;

pub type Features = features::FeatureVector<f64>;
pub type Matrix = graph::SymmetricMatrix<f64>;
pub type Spectrum = features::Spectrum<f64>;
pub type Scaler = dataset::MinMaxScaler<f64>;

pub type FeaturesF32 = features::FeatureVector<f32>;
pub type MatrixF32 = graph::SymmetricMatrix<f32>;
pub type SpectrumF32 = features::Spectrum<f32>;
