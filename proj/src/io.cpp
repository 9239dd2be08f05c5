#include "fracsde/io.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fracsde::io {

static_assert(std::endian::native == std::endian::little,
              "binary ensemble format assumes a little-endian host");

std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string path_to_csv(const SampledPath& f) {
    std::string out = "t,value\n";
    for (std::size_t i = 0; i <= f.n_steps(); ++i) {
        out += format_double(f.node(i));
        out += ',';
        out += format_double(f[i]);
        out += '\n';
    }
    return out;
}

SampledPath path_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    require(static_cast<bool>(std::getline(in, line)), "path_from_csv: empty input");
    require(line == "t,value" || line == "t,value\r", "path_from_csv: expected header 't,value'");
    std::vector<double> t, v;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        require(comma != std::string::npos, "path_from_csv: malformed row: " + line);
        t.push_back(std::stod(line.substr(0, comma)));
        v.push_back(std::stod(line.substr(comma + 1)));
    }
    require(t.size() >= 2, "path_from_csv: need at least two rows");
    const double T = t.back();
    require(T > 0.0, "path_from_csv: horizon must be positive");
    const double dt = T / static_cast<double>(t.size() - 1);
    for (std::size_t i = 0; i < t.size(); ++i)
        require(std::abs(t[i] - dt * static_cast<double>(i)) <= 1e-9 * std::max(1.0, T),
                "path_from_csv: nodes must form a uniform grid starting at 0");
    return SampledPath(T, std::move(v));
}

std::string ensemble_to_csv(const sim::PathEnsemble& ens) {
    std::string out = "t";
    for (std::size_t p = 0; p < ens.n_paths(); ++p) out += ",path_" + std::to_string(p);
    out += '\n';
    for (std::size_t i = 0; i < ens.n_nodes(); ++i) {
        out += format_double(ens.grid().node(i));
        for (std::size_t p = 0; p < ens.n_paths(); ++p) {
            out += ',';
            out += format_double(ens.at(p, i));
        }
        out += '\n';
    }
    return out;
}

namespace {

constexpr char kMagic[8] = {'F', 'S', 'D', 'E', '1', '\0', '\0', '\0'};

template <typename T>
void append_raw(std::string& out, const T& value) {
    char buf[sizeof(T)];
    std::memcpy(buf, &value, sizeof(T));
    out.append(buf, sizeof(T));
}

template <typename T>
T read_raw(const std::string& bytes, std::size_t& offset) {
    require(offset + sizeof(T) <= bytes.size(), "ensemble_from_binary: truncated block");
    T value;
    std::memcpy(&value, bytes.data() + offset, sizeof(T));
    offset += sizeof(T);
    return value;
}

}  // namespace

std::string ensemble_to_binary(const sim::PathEnsemble& ens) {
    std::string out(kMagic, sizeof(kMagic));
    append_raw<std::uint64_t>(out, ens.n_paths());
    append_raw<std::uint64_t>(out, ens.n_nodes());
    append_raw<double>(out, ens.grid().T);
    append_raw<std::uint64_t>(out, ens.seed());
    out.reserve(out.size() + ens.data().size() * sizeof(double));
    for (double x : ens.data()) append_raw<double>(out, x);
    return out;
}

sim::PathEnsemble ensemble_from_binary(const std::string& bytes) {
    require(bytes.size() >= sizeof(kMagic) && std::memcmp(bytes.data(), kMagic, 5) == 0,
            "ensemble_from_binary: bad magic (want FSDE1)");
    std::size_t off = sizeof(kMagic);
    const auto n_paths = read_raw<std::uint64_t>(bytes, off);
    const auto n_nodes = read_raw<std::uint64_t>(bytes, off);
    const auto T = read_raw<double>(bytes, off);
    const auto seed = read_raw<std::uint64_t>(bytes, off);
    require(n_nodes >= 3 && n_paths >= 1, "ensemble_from_binary: degenerate dimensions");
    sim::PathEnsemble ens(GridSpec{T, static_cast<std::size_t>(n_nodes - 1)},
                          static_cast<std::size_t>(n_paths), seed);
    for (std::size_t p = 0; p < ens.n_paths(); ++p) {
        auto row = ens.row(p);
        for (std::size_t i = 0; i < ens.n_nodes(); ++i) row[i] = read_raw<double>(bytes, off);
    }
    require(off == bytes.size(), "ensemble_from_binary: trailing bytes");
    return ens;
}

std::string chaos_table_to_json(const chaos::ChaosTable& table) {
    nlohmann::json j;
    j["T"] = table.horizon();
    j["K"] = table.basis_size();
    j["N"] = table.max_order();
    auto& entries = j["entries"] = nlohmann::json::array();
    for (const auto& [alpha, path] : table.entries()) {
        nlohmann::json e;
        e["alpha"] = nlohmann::json::array();
        for (const auto& [k, m] : alpha.entries) e["alpha"].push_back({k, m});
        e["values"] = path.values();
        entries.push_back(std::move(e));
    }
    return j.dump();
}

chaos::ChaosTable chaos_table_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    chaos::ChaosTable table(j.at("T").get<double>(), j.at("K").get<std::size_t>(),
                            j.at("N").get<std::size_t>());
    for (const auto& e : j.at("entries")) {
        chaos::MultiIndex alpha;
        for (const auto& pair : e.at("alpha"))
            alpha.entries.emplace_back(pair.at(0).get<std::size_t>(),
                                       pair.at(1).get<std::size_t>());
        table.insert(std::move(alpha),
                     SampledPath(table.horizon(), e.at("values").get<std::vector<double>>()));
    }
    return table;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), "cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content, bool allow_overwrite) {
    if (!allow_overwrite)
        require(!std::filesystem::exists(path),
                "refusing to overwrite existing file (use --force): " + path);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    require(out.good(), "cannot open for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    require(out.good(), "write failed: " + path);
}

}  // namespace fracsde::io
