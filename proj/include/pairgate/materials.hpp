#pragma once

// Material catalog: medium definitions loaded from a line-oriented text file.
//
//   # comment
//   [KTP_class]
//   process = SPDC
//   chi_eff = 1 pm/V
//   n_p = 1
//   n_s = 1
//   n_i = 1
//   effective_gamma_mode = true
//   note = free text up to the end of the line
//
// Section headers name a record. process and chi_eff are required; indices
// default to 1. chi_eff units: pm/V or m/V for SPDC, m2/V2 for FWM.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pairgate/physics.hpp"

namespace pairgate::materials
{
struct MaterialRecord
{
    std::string name;
    Process process = Process::Spdc;
    double chi_value = 0.0;   ///< as declared, in chi_unit
    std::string chi_unit;     ///< "pm/V", "m/V" or "m2/V2"
    double n_p = 1.0;
    double n_s = 1.0;
    double n_i = 1.0;
    bool effective_gamma_mode = false;  ///< indices are placeholders, only Gamma is meaningful
    std::string note;

    /// chi_eff in SI (m/V or m^2/V^2).
    double chi_eff() const;
    Medium to_medium() const;

    bool operator==(const MaterialRecord&) const = default;
};

class Catalog
{
  public:
    Catalog() = default;
    explicit Catalog(std::vector<MaterialRecord> records);

    const std::vector<MaterialRecord>& records() const noexcept { return records_; }
    bool empty() const noexcept { return records_.empty(); }
    std::size_t size() const noexcept { return records_.size(); }

    /// Exact-name lookup. On a miss the error lists the closest names.
    const MaterialRecord& lookup(std::string_view name) const;
    const MaterialRecord* find(std::string_view name) const noexcept;

    bool operator==(const Catalog&) const = default;

  private:
    std::vector<MaterialRecord> records_;
};

/// Parse a catalog document. Throws ParseError with the offending line.
Catalog load_catalog(std::string_view document);
Catalog load_catalog_file(const std::filesystem::path& path);

std::string serialize(const Catalog& catalog);

/// The four nonlinearity classes shipped with the tool.
const Catalog& builtin_presets();
std::string_view builtin_document() noexcept;

inline constexpr const char* env_var = "PAIRGATE_MATERIALS";

/// Explicit path, else $PAIRGATE_MATERIALS, else the built-in presets.
Catalog resolve_catalog(const std::optional<std::filesystem::path>& explicit_path);
}  // namespace pairgate::materials
