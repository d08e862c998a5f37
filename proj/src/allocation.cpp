#include "ecsa/allocation.hpp"

#include "json.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <unordered_set>

namespace ecsa::la {

namespace {

void validate_sites(const std::vector<Site>& sites, const char* kind) {
    if (sites.empty()) throw std::invalid_argument(std::string("allocation instance has no ") + kind);
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < sites.size(); ++i) {
        const Site& s = sites[i];
        const std::string where = std::string(kind) + "[" + std::to_string(i) + "] (id '" + s.id + "')";
        if (s.id.empty()) throw std::invalid_argument(where + ": empty id");
        if (!seen.insert(s.id).second) throw std::invalid_argument(where + ": duplicate id");
        if (!std::isfinite(s.x) || !std::isfinite(s.y)) throw std::invalid_argument(where + ": non-finite coordinate");
    }
}

} // namespace

AllocationInstance::AllocationInstance(std::vector<Site> blocks, std::vector<Site> areas)
    : blocks_(std::move(blocks)), areas_(std::move(areas)) {
    validate_sites(blocks_, "blocks");
    validate_sites(areas_, "areas");
    distance_.resize(blocks_.size() * areas_.size());
    for (std::size_t j = 0; j < blocks_.size(); ++j) {
        for (std::size_t i = 0; i < areas_.size(); ++i)
            distance_[j * areas_.size() + i] = std::hypot(blocks_[j].x - areas_[i].x, blocks_[j].y - areas_[i].y);
    }
}

std::vector<std::uint8_t> Assignment::onehot(std::size_t n_areas) const {
    std::vector<std::uint8_t> m(area_of.size() * n_areas, 0);
    for (std::size_t j = 0; j < area_of.size(); ++j) {
        if (area_of[j] >= n_areas) throw std::invalid_argument("assignment refers to a missing area");
        m[j * n_areas + area_of[j]] = 1;
    }
    return m;
}

Assignment Assignment::from_onehot(std::span<const std::uint8_t> matrix, std::size_t n_blocks, std::size_t n_areas) {
    if (matrix.size() != n_blocks * n_areas) throw std::invalid_argument("one-hot matrix has the wrong size");
    Assignment a;
    a.area_of.reserve(n_blocks);
    for (std::size_t j = 0; j < n_blocks; ++j) {
        std::size_t ones = 0, where = 0;
        for (std::size_t i = 0; i < n_areas; ++i) {
            const std::uint8_t v = matrix[j * n_areas + i];
            if (v > 1) throw std::invalid_argument("one-hot matrix entries must be 0 or 1");
            if (v == 1) {
                ++ones;
                where = i;
            }
        }
        if (ones != 1) throw std::invalid_argument("one-hot row " + std::to_string(j) + " does not sum to 1");
        a.area_of.push_back(where);
    }
    return a;
}

namespace {

std::string id_text(const nlohmann::json& id, const std::string& where) {
    if (id.is_string()) return id.get<std::string>();
    if (id.is_number_integer()) return std::to_string(id.get<std::int64_t>());
    throw std::runtime_error(where + ": id must be a string or an integer");
}

double coordinate(const nlohmann::json& rec, const char* key, const std::string& where) {
    if (!rec.contains(key) || !rec[key].is_number()) throw std::runtime_error(where + ": missing numeric '" + key + "'");
    return rec[key].get<double>();
}

std::vector<Site> sites_from_json(const nlohmann::json& doc, const char* key) {
    if (!doc.contains(key)) throw std::runtime_error(std::string("instance file has no '") + key + "' section");
    const auto& arr = doc[key];
    if (!arr.is_array()) throw std::runtime_error(std::string("'") + key + "' must be an array");
    std::vector<Site> sites;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string where = std::string(key) + "[" + std::to_string(i) + "]";
        const auto& rec = arr[i];
        if (!rec.is_object() || !rec.contains("id")) throw std::runtime_error(where + ": expected {id, x, y}");
        sites.push_back(Site{id_text(rec["id"], where), coordinate(rec, "x", where), coordinate(rec, "y", where)});
    }
    return sites;
}

AllocationInstance build(std::vector<Site> blocks, std::vector<Site> areas) {
    try {
        return AllocationInstance(std::move(blocks), std::move(areas));
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(e.what());
    }
}

std::vector<Site> sites_from_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string line;
    std::size_t line_no = 0;
    std::vector<Site> sites;
    bool header = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        if (header) {
            header = false;
            if (line.rfind("id", 0) == 0) continue;
        }
        const std::string where = path.filename().string() + ":" + std::to_string(line_no);
        std::istringstream row(line);
        std::string id, xs, ys, extra;
        if (!std::getline(row, id, ',') || !std::getline(row, xs, ',') || !std::getline(row, ys, ',') ||
            std::getline(row, extra, ','))
            throw std::runtime_error(where + ": expected 3 columns id,x,y");
        try {
            std::size_t used_x = 0, used_y = 0;
            const double x = std::stod(xs, &used_x);
            const double y = std::stod(ys, &used_y);
            if (xs.find_first_not_of(" \t", used_x) != std::string::npos ||
                ys.find_first_not_of(" \t", used_y) != std::string::npos)
                throw std::invalid_argument("junk");
            sites.push_back(Site{id, x, y});
        } catch (const std::logic_error&) {
            throw std::runtime_error(where + ": malformed coordinate");
        }
    }
    return sites;
}

} // namespace

AllocationInstance parse_instance(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("malformed instance file: ") + e.what());
    }
    if (!doc.is_object()) throw std::runtime_error("instance file must hold an object");
    return build(sites_from_json(doc, "blocks"), sites_from_json(doc, "areas"));
}

AllocationInstance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file " + path.string());
    return parse_instance(in);
}

AllocationInstance load_instance_csv(const std::filesystem::path& blocks, const std::filesystem::path& areas) {
    return build(sites_from_csv(blocks), sites_from_csv(areas));
}

double fitness(const AllocationInstance& instance, const Assignment& assignment) {
    if (assignment.area_of.size() != instance.n_blocks())
        throw std::invalid_argument("assignment covers " + std::to_string(assignment.area_of.size()) +
                                    " blocks, instance has " + std::to_string(instance.n_blocks()));
    double total = 0.0;
    for (std::size_t j = 0; j < assignment.area_of.size(); ++j) {
        const std::size_t area = assignment.area_of[j];
        if (area >= instance.n_areas()) throw std::invalid_argument("assignment refers to a missing area");
        total += instance.distance(j, area);
    }
    return total;
}

Assignment decode(std::span<const double> position, const AllocationInstance& instance) {
    const std::size_t n_areas = instance.n_areas();
    if (position.size() != instance.encoded_dim())
        throw std::invalid_argument("decode: expected " + std::to_string(instance.encoded_dim()) +
                                    " coordinates, got " + std::to_string(position.size()));
    Assignment a;
    a.area_of.resize(instance.n_blocks());
    for (std::size_t j = 0; j < instance.n_blocks(); ++j) {
        const auto row = position.subspan(j * n_areas, n_areas);
        std::size_t arg = 0;
        for (std::size_t i = 1; i < n_areas; ++i) {
            if (row[i] > row[arg]) arg = i;
        }
        a.area_of[j] = arg;
    }
    return a;
}

Allocation optimal_assignment(const AllocationInstance& instance) {
    Assignment a;
    a.area_of.resize(instance.n_blocks());
    for (std::size_t j = 0; j < instance.n_blocks(); ++j) {
        std::size_t arg = 0;
        for (std::size_t i = 1; i < instance.n_areas(); ++i) {
            if (instance.distance(j, i) < instance.distance(j, arg)) arg = i;
        }
        a.area_of[j] = arg;
    }
    const double f = fitness(instance, a);
    return Allocation{std::move(a), f};
}

AllocationInstance synth_instance(std::size_t n_blocks, std::size_t n_areas, std::uint64_t seed) {
    if (n_blocks == 0 || n_areas == 0) throw std::invalid_argument("synth_instance: counts must be positive");
    Rng rng(seed);
    std::vector<Site> blocks, areas;
    for (std::size_t j = 0; j < n_blocks; ++j) {
        const double x = rng.unit();
        const double y = rng.unit();
        blocks.push_back(Site{"B" + std::to_string(j + 1), x, y});
    }
    for (std::size_t i = 0; i < n_areas; ++i) {
        const double x = rng.unit();
        const double y = rng.unit();
        areas.push_back(Site{"A" + std::to_string(i + 1), x, y});
    }
    return AllocationInstance(std::move(blocks), std::move(areas));
}

SearchBox encoded_box(const AllocationInstance& instance) {
    return SearchBox::uniform(instance.encoded_dim(), 0.0, 1.0);
}

Objective objective(const AllocationInstance& instance) {
    auto shared = std::make_shared<const AllocationInstance>(instance);
    return [shared](std::span<const double> x, Rng&) { return fitness(*shared, decode(x, *shared)); };
}

void write_assignment_csv(std::ostream& out, const AllocationInstance& instance, const Assignment& assignment) {
    out << "block_id,area_id,distance\n";
    char buf[32];
    for (std::size_t j = 0; j < assignment.area_of.size(); ++j) {
        const std::size_t i = assignment.area_of[j];
        const auto end = std::to_chars(buf, buf + sizeof buf, instance.distance(j, i)).ptr;
        out << instance.blocks()[j].id << ',' << instance.areas()[i].id << ',' << std::string_view(buf, end) << '\n';
    }
}

} // namespace ecsa::la
