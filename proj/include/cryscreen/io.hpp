#pragma once

#include "cryscreen/features.hpp"
#include "cryscreen/selection.hpp"
#include "cryscreen/svm.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace cryscreen {

// ---- features CSV --------------------------------------------------------
//
//   # cryscreen-features v1 window_length=8000 sample_rate=8000 frame_len=1024 ...
//   label,f00c01,f00c02,...,f13c12
//   +1,<168 values, 12 significant digits>
//
// Row ids are "row:<n>" (0-based data row index).

std::string feature_config_line(const FeatureConfig& config);
FeatureConfig parse_feature_config_line(const std::string& line);

/// Short stable identifier of a front-end configuration.
std::string feature_fingerprint(const FeatureConfig& config);

void write_features_csv(std::ostream& out, const FeatureConfig& config, const LabeledDataset& ds);
void write_features_csv(const std::filesystem::path& path, const FeatureConfig& config,
                        const LabeledDataset& ds);

struct FeatureTable {
    FeatureConfig config;
    LabeledDataset data;
};

/// Throws Error(Parse) on malformed content and Error(Configuration) if a
/// row's width disagrees with the header's configuration.
FeatureTable read_features_csv(std::istream& in);
FeatureTable read_features_csv(const std::filesystem::path& path);

int parse_label(const std::string& text);

// ---- model file ------------------------------------------------------------

inline constexpr int kModelFormatVersion = 1;

struct GridSummary {
    KernelFamily family = KernelFamily::Rbf;
    std::size_t cells = 0;
    GridCell best;
};

struct Provenance {
    std::uint64_t seed = 42;
    std::string dataset_fingerprint;
    std::optional<GridSummary> grid;
    std::size_t train_rows = 0;
};

struct ModelFile {
    FeatureConfig features;
    SvmModel model;
    Provenance provenance;
};

std::string serialize_model(const ModelFile& file);
/// Throws Error(Parse) for malformed or truncated content and
/// Error(VersionUnsupported) for an unknown format_version.
ModelFile deserialize_model(const std::string& text);

void save_model(const ModelFile& file, const std::filesystem::path& path);
ModelFile load_model(const std::filesystem::path& path);

/// FNV-1a over labels and the bit patterns of every feature value.
std::string dataset_fingerprint(const LabeledDataset& ds);
std::string ids_fingerprint(const LabeledDataset& ds);

// ---- grid report -------------------------------------------------------------

struct GridReportContext {
    std::uint64_t seed = 42;
    std::size_t train = 0;
    std::size_t cv = 0;
    std::size_t test = 0;
    std::string test_ids_fingerprint;
};

void write_grid_report(std::ostream& out, const GridSearchResult& result, const GridReportContext& ctx);

/// id,label,split rows for every sample in the three parts.
void write_split_manifest(std::ostream& out, const DatasetSplit& split);

}  // namespace cryscreen
