// This file is part of zml.
//
// zml: certified arithmetic for moment-polynomial coefficient asymptotics.
//
// Distributed under the MIT license; see the LICENSE file at the project
// root for the full text.

#ifndef ZML_COEFF_TABLE_HPP
#define ZML_COEFF_TABLE_HPP

#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "zml/ball.hpp"
#include "zml/config.hpp"

namespace zml {

/// One ingested coefficient: the printed decimal is kept verbatim and the
/// ball around it carries a half-ulp-of-the-last-digit radius, so the
/// ball is exactly the set of reals that round to the printed string.
struct CoefficientRecord {
    unsigned k = 0;
    unsigned r = 0;
    std::string text;
    BallValue value;
    std::string source;
};

/// Reference coefficient values keyed by (k, r). Files hold one record
/// per line, either JSON objects {"k": int, "r": int, "c": "decimal"} or
/// CSV rows under a `k,r,c` header; lines starting with '#' are comments.
/// At most one record per (k, r) is accepted.
class CoefficientTable {
public:
    void insert(CoefficientRecord rec) {
        require(rec.r <= rec.k * rec.k, errc::usage,
                "coefficient index r exceeds k^2 (k=" + std::to_string(rec.k) +
                    ", r=" + std::to_string(rec.r) + ")");
        const auto key = std::make_pair(rec.k, rec.r);
        require(records_.find(key) == records_.end(), errc::usage,
                "duplicate coefficient record for k=" + std::to_string(rec.k) +
                    ", r=" + std::to_string(rec.r));
        records_.emplace(key, std::move(rec));
    }

    const CoefficientRecord* find(unsigned k, unsigned r) const {
        auto it = records_.find(std::make_pair(k, r));
        return it == records_.end() ? nullptr : &it->second;
    }

    std::size_t size() const { return records_.size(); }

    /// Distinct k values present, ascending.
    std::vector<unsigned> ks() const {
        std::vector<unsigned> out;
        for (const auto& [key, rec] : records_) {
            (void)rec;
            if (out.empty() || out.back() != key.first)
                out.push_back(key.first);
        }
        return out;
    }

    /// Largest r present for the given k; requires at least one record.
    unsigned max_r(unsigned k) const {
        bool seen = false;
        unsigned best = 0;
        for (const auto& [key, rec] : records_) {
            (void)rec;
            if (key.first == k) {
                seen = true;
                best = key.second;
            }
        }
        require(seen, errc::usage,
                "no coefficient records for k=" + std::to_string(k));
        return best;
    }

    static CoefficientTable from_stream(std::istream& in, unsigned bits,
                                        const std::string& label) {
        CoefficientTable table;
        std::string line;
        bool csv_header_seen = false;
        while (std::getline(in, line)) {
            while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
                line.pop_back();
            std::size_t start = line.find_first_not_of(" \t");
            if (start == std::string::npos) continue;
            if (line[start] == '#') continue;

            CoefficientRecord rec;
            rec.source = label;
            if (line[start] == '{') {
                nlohmann::json obj;
                try {
                    obj = nlohmann::json::parse(line);
                } catch (const nlohmann::json::exception& e) {
                    throw Error(errc::usage,
                                "bad coefficient record in " + label + ": " +
                                    e.what());
                }
                require(obj.contains("k") && obj.contains("r") &&
                            obj.contains("c") && obj["k"].is_number_unsigned() &&
                            obj["r"].is_number_unsigned() &&
                            obj["c"].is_string(),
                        errc::usage,
                        "coefficient record needs integer k, r and string c");
                rec.k = obj["k"].get<unsigned>();
                rec.r = obj["r"].get<unsigned>();
                rec.text = obj["c"].get<std::string>();
            } else {
                std::istringstream cells(line.substr(start));
                std::string kc, rc, cc;
                const bool ok = static_cast<bool>(std::getline(cells, kc, ',')) &&
                                static_cast<bool>(std::getline(cells, rc, ',')) &&
                                static_cast<bool>(std::getline(cells, cc));
                require(ok, errc::usage,
                        "bad coefficient row in " + label + ": " + line);
                // Header row: the value column may carry any name (the
                // same reader serves plain coefficients and ratio tables).
                if (!csv_header_seen && kc == "k" && rc == "r") {
                    csv_header_seen = true;
                    continue;
                }
                try {
                    rec.k = static_cast<unsigned>(std::stoul(kc));
                    rec.r = static_cast<unsigned>(std::stoul(rc));
                } catch (const std::exception&) {
                    throw Error(errc::usage,
                                "bad coefficient indices in " + label + ": " +
                                    line);
                }
                rec.text = cc;
            }
            rec.value = BallValue::from_decimal(rec.text, bits);
            table.insert(std::move(rec));
        }
        return table;
    }

    static CoefficientTable load(const std::string& path, unsigned bits) {
        std::ifstream in(path);
        require(static_cast<bool>(in), errc::usage,
                "cannot open coefficient file: " + path);
        return from_stream(in, bits, path);
    }

private:
    std::map<std::pair<unsigned, unsigned>, CoefficientRecord> records_;
};

} // namespace zml

#endif // ZML_COEFF_TABLE_HPP
