#include "pairgate/materials.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <utility>

#include <fmt/format.h>

#include "pairgate/errors.hpp"
#include "pairgate/units.hpp"

namespace pairgate::materials
{
namespace
{
constexpr std::string_view presets_text = R"(# Built-in nonlinearity classes. Susceptibilities are nominal orders of
# magnitude; indices are placeholders (effective_gamma_mode), so only the
# index-normalised limit intensity Gamma is meaningful for these records.

[KTP_class]
process = SPDC
chi_eff = 1 pm/V
effective_gamma_mode = true
note = KTP and BBO class, chi2 ~ 1 pm/V (approximate)

[PPLN_class]
process = SPDC
chi_eff = 10 pm/V
effective_gamma_mode = true
note = PPKTP and PPLN class, chi2 ~ 10 pm/V (approximate)

[GaAs_class]
process = SPDC
chi_eff = 100 pm/V
effective_gamma_mode = true
note = CSP and GaAs class, chi2 ~ 100 pm/V (approximate)

[silica_fiber]
process = FWM
chi_eff = 1e-22 m2/V2
effective_gamma_mode = true
note = silica fibre, chi3 ~ 1e-22 m2/V2 (approximate)
)";

std::string_view trim(std::string_view s)
{
    constexpr std::string_view ws = " \t\r";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

std::size_t edit_distance(std::string_view a, std::string_view b)
{
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j)
        row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i)
    {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j)
        {
            const std::size_t up = row[j];
            const bool same = std::tolower(static_cast<unsigned char>(a[i - 1]))
                              == std::tolower(static_cast<unsigned char>(b[j - 1]));
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (same ? 0 : 1)});
            diag = up;
        }
    }
    return row[b.size()];
}

Process parse_process(std::string_view value, std::size_t line)
{
    if (value == "SPDC" || value == "spdc")
        return Process::Spdc;
    if (value == "FWM" || value == "fwm")
        return Process::Fwm;
    throw ParseError("unknown process '" + std::string(value) + "' (expected SPDC or FWM)", line);
}

double parse_number(std::string_view value, std::string_view key, std::size_t line)
{
    try
    {
        return units::parse(value, units::Kind::Dimensionless);
    }
    catch (const ParseError& e)
    {
        throw ParseError(std::string(key) + ": " + e.what(), line);
    }
}

bool parse_bool(std::string_view value, std::size_t line)
{
    if (value == "true")
        return true;
    if (value == "false")
        return false;
    throw ParseError("expected true or false, got '" + std::string(value) + "'", line);
}

struct Pending
{
    MaterialRecord record;
    std::size_t header_line = 0;
    std::size_t chi_line = 0;
    bool has_process = false;
    bool has_chi = false;
};

void finish(Pending& pending, std::vector<MaterialRecord>& out)
{
    auto& r = pending.record;
    if (!pending.has_process)
        throw ParseError("material '" + r.name + "' has no process", pending.header_line);
    if (!pending.has_chi)
        throw ParseError("material '" + r.name + "' has no chi_eff", pending.header_line);

    const auto expected = r.process == Process::Spdc ? units::Kind::Chi2 : units::Kind::Chi3;
    const auto other = r.process == Process::Spdc ? units::Kind::Chi3 : units::Kind::Chi2;
    if (!units::accepts(expected, r.chi_unit))
    {
        if (units::accepts(other, r.chi_unit))
        {
            throw ParseError("unit mismatch: '" + r.chi_unit + "' is a "
                                 + std::string(units::to_string(other)) + " unit but '" + r.name
                                 + "' is " + std::string(to_string(r.process)),
                             pending.chi_line);
        }
        throw ParseError("unknown susceptibility unit '" + r.chi_unit + "'", pending.chi_line);
    }
    if (!(r.chi_value > 0.0))
        throw ParseError("chi_eff must be strictly positive", pending.chi_line);
    for (const double n : {r.n_p, r.n_s, r.n_i})
    {
        if (!(n >= 1.0))
            throw ParseError("refractive indices of '" + r.name + "' must be >= 1",
                             pending.header_line);
    }
    out.push_back(std::move(r));
}
}  // namespace

double MaterialRecord::chi_eff() const
{
    const auto kind = process == Process::Spdc ? units::Kind::Chi2 : units::Kind::Chi3;
    return chi_value * units::unit_scale(kind, chi_unit);
}

Medium MaterialRecord::to_medium() const { return Medium(process, chi_eff(), n_p, n_s, n_i); }

Catalog::Catalog(std::vector<MaterialRecord> records) : records_(std::move(records)) {}

const MaterialRecord* Catalog::find(std::string_view name) const noexcept
{
    const auto it = std::find_if(records_.begin(), records_.end(),
                                 [&](const MaterialRecord& r) { return r.name == name; });
    return it == records_.end() ? nullptr : &*it;
}

const MaterialRecord& Catalog::lookup(std::string_view name) const
{
    if (const auto* record = find(name))
        return *record;

    std::vector<std::pair<std::size_t, std::string_view>> ranked;
    for (const auto& r : records_)
        ranked.emplace_back(edit_distance(name, r.name), r.name);
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    std::string message = "unknown material '" + std::string(name) + "'";
    if (!ranked.empty())
    {
        message += "; nearest: ";
        for (std::size_t k = 0; k < std::min<std::size_t>(3, ranked.size()); ++k)
            message += (k ? ", " : "") + std::string(ranked[k].second);
    }
    throw ContractError(message);
}

Catalog load_catalog(std::string_view document)
{
    std::vector<MaterialRecord> records;
    std::optional<Pending> pending;
    std::size_t line_no = 0;

    while (!document.empty())
    {
        ++line_no;
        const auto eol = document.find('\n');
        std::string_view line = trim(document.substr(0, eol));
        document = eol == std::string_view::npos ? std::string_view{} : document.substr(eol + 1);

        if (line.empty() || line.front() == '#')
            continue;

        if (line.front() == '[')
        {
            if (line.back() != ']')
                throw ParseError("unterminated section header", line_no);
            const auto name = trim(line.substr(1, line.size() - 2));
            if (name.empty() || name.find_first_of(" \t") != std::string_view::npos)
                throw ParseError("material name must be a non-empty identifier", line_no);
            if (pending)
                finish(*pending, records);
            const bool taken = std::any_of(records.begin(), records.end(),
                                           [&](const MaterialRecord& r) { return r.name == name; });
            if (taken)
                throw ParseError("duplicate material name '" + std::string(name) + "'", line_no);
            pending.emplace();
            pending->record.name = std::string(name);
            pending->header_line = line_no;
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("expected 'key = value' or '[name]'", line_no);
        if (!pending)
            throw ParseError("key outside of a [material] section", line_no);

        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        auto& r = pending->record;

        if (key == "process")
        {
            r.process = parse_process(value, line_no);
            pending->has_process = true;
        }
        else if (key == "chi_eff")
        {
            // "1 pm/V" and "1pm/V" are both accepted.
            std::string compact;
            for (const char ch : value)
            {
                if (ch != ' ' && ch != '\t')
                    compact.push_back(ch);
            }
            try
            {
                const auto split = units::split_number(compact);
                r.chi_value = split.number;
                r.chi_unit = std::string(split.unit);
            }
            catch (const ParseError& e)
            {
                throw ParseError(std::string("chi_eff: ") + e.what(), line_no);
            }
            if (r.chi_unit.empty())
                throw ParseError("chi_eff needs an explicit unit (pm/V, m/V or m2/V2)", line_no);
            pending->has_chi = true;
            pending->chi_line = line_no;
        }
        else if (key == "n_p")
            r.n_p = parse_number(value, key, line_no);
        else if (key == "n_s")
            r.n_s = parse_number(value, key, line_no);
        else if (key == "n_i")
            r.n_i = parse_number(value, key, line_no);
        else if (key == "effective_gamma_mode")
            r.effective_gamma_mode = parse_bool(value, line_no);
        else if (key == "note")
            r.note = std::string(value);
        else
            throw ParseError("unknown key '" + std::string(key) + "'", line_no);
    }
    if (pending)
        finish(*pending, records);
    return Catalog(std::move(records));
}

Catalog load_catalog_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read material file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try
    {
        return load_catalog(buffer.str());
    }
    catch (const ParseError& e)
    {
        throw ParseError(path.string() + ": " + e.what());
    }
}

std::string serialize(const Catalog& catalog)
{
    std::string out;
    for (const auto& r : catalog.records())
    {
        if (!out.empty())
            out += '\n';
        out += fmt::format("[{}]\n", r.name);
        out += fmt::format("process = {}\n", to_string(r.process));
        out += fmt::format("chi_eff = {} {}\n", units::format_full(r.chi_value), r.chi_unit);
        out += fmt::format("n_p = {}\n", units::format_full(r.n_p));
        out += fmt::format("n_s = {}\n", units::format_full(r.n_s));
        out += fmt::format("n_i = {}\n", units::format_full(r.n_i));
        out += fmt::format("effective_gamma_mode = {}\n", r.effective_gamma_mode);
        if (!r.note.empty())
            out += fmt::format("note = {}\n", r.note);
    }
    return out;
}

std::string_view builtin_document() noexcept { return presets_text; }

const Catalog& builtin_presets()
{
    static const Catalog presets = load_catalog(presets_text);
    return presets;
}

Catalog resolve_catalog(const std::optional<std::filesystem::path>& explicit_path)
{
    if (explicit_path)
        return load_catalog_file(*explicit_path);
    if (const char* env = std::getenv(env_var); env && *env)
        return load_catalog_file(env);
    return builtin_presets();
}
}  // namespace pairgate::materials
