#include "gatedist/json_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gatedist/errors.hpp"

namespace gatedist::io {

namespace {

void write_value(const Json& v, std::string& out) {
    switch (v.type()) {
        case Json::value_t::object: {
            out += '{';
            bool first = true;
            for (const auto& [key, item] : v.items()) {
                if (!first) {
                    out += ',';
                }
                first = false;
                out += Json(key).dump();
                out += ':';
                write_value(item, out);
            }
            out += '}';
            break;
        }
        case Json::value_t::array: {
            out += '[';
            for (std::size_t k = 0; k < v.size(); ++k) {
                if (k > 0) {
                    out += ',';
                }
                write_value(v[k], out);
            }
            out += ']';
            break;
        }
        case Json::value_t::number_float: {
            const double d = v.get<double>();
            out += std::isfinite(d) ? format_double(d) : "null";
            break;
        }
        default:
            out += v.dump();
    }
}

double number_at(const Json& v, const std::string& where) {
    if (!v.is_number()) {
        throw ValidationError(where + ": expected a number");
    }
    return v.get<double>();
}

}  // namespace

Json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open " + path);
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        std::ostringstream msg;
        msg << path << ": malformed JSON at byte " << e.byte << ": " << e.what();
        throw ValidationError(msg.str());
    }
}

ComplexMatrix matrix_from_json(const Json& doc, const std::string& where) {
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains("rows")) {
        throw ValidationError(where + ": expected an object with \"dim\" and \"rows\"");
    }
    if (!doc["dim"].is_number_integer() || doc["dim"].get<long long>() < 1) {
        throw ValidationError(where + ": \"dim\" must be a positive integer");
    }
    const auto n = static_cast<std::size_t>(doc["dim"].get<long long>());
    const Json& rows = doc["rows"];
    if (!rows.is_array() || rows.size() != n) {
        throw DimensionError(where + ": \"rows\" must hold dim rows");
    }
    ComplexMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < n; ++r) {
        if (!rows[r].is_array() || rows[r].size() != n) {
            throw DimensionError(where + ": row " + std::to_string(r) + " must hold dim entries");
        }
        for (std::size_t c = 0; c < n; ++c) {
            const Json& entry = rows[r][c];
            const std::string at = where + ": entry (" + std::to_string(r) + "," + std::to_string(c) + ")";
            if (!entry.is_array() || entry.size() != 2) {
                throw ValidationError(at + " must be [re, im]");
            }
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                Complex(number_at(entry[0], at), number_at(entry[1], at));
        }
    }
    return m;
}

Json matrix_to_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
        }
        rows.push_back(std::move(row));
    }
    Json out;
    out["dim"] = m.rows();
    out["rows"] = std::move(rows);
    return out;
}

ComplexMatrix read_matrix_file(const std::string& path) {
    return matrix_from_json(read_json_file(path), path);
}

std::vector<ComplexMatrix> read_gate_set(const std::string& path) {
    const Json doc = read_json_file(path);
    if (!doc.is_object() || !doc.contains("gates") || !doc["gates"].is_array()) {
        throw ValidationError(path + ": expected an object with a \"gates\" array");
    }
    std::vector<ComplexMatrix> out;
    for (std::size_t k = 0; k < doc["gates"].size(); ++k) {
        out.push_back(matrix_from_json(doc["gates"][k], path + ": gate " + std::to_string(k)));
    }
    return out;
}

std::string dump(const Json& doc) {
    std::string out;
    write_value(doc, out);
    return out;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::vector<double> parse_real_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        std::string item = text.substr(pos, comma - pos);
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        item = first == std::string::npos ? "" : item.substr(first, last - first + 1);
        double value = 0.0;
        const auto res = std::from_chars(item.data(), item.data() + item.size(), value);
        if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size()) {
            throw ValidationError(what + ": cannot parse \"" + item + "\" as a number");
        }
        out.push_back(value);
        pos = comma + 1;
    }
    return out;
}

void write_csv(const std::string& path, const std::vector<double>& x, const std::vector<double>& y) {
    std::ofstream csv(path, std::ios::binary);
    if (!csv) {
        throw ValidationError("cannot write " + path);
    }
    csv << "x,y\n";
    for (std::size_t k = 0; k < x.size() && k < y.size(); ++k) {
        csv << format_double(x[k]) << ',' << format_double(y[k]) << '\n';
    }
}

}  // namespace gatedist::io
