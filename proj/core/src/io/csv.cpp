#include "vinesense/io/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "vinesense/errors.hpp"

namespace vinesense::io {

namespace {

struct Line {
    int number = 0;  // 1-based
    std::string text;
};

// Logical lines with numbers; blank lines dropped, comments kept (schemas
// assign meaning to some of them).
std::vector<Line> split_lines(const std::string& text) {
    std::vector<Line> out;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string line = text.substr(pos, nl == std::string::npos ? nl : nl - pos);
        ++number;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (!line.empty()) {
            out.push_back(Line{number, line});
        }
        if (nl == std::string::npos) break;
        pos = nl + 1;
    }
    return out;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = line.find(',', pos);
        if (comma == std::string::npos) {
            out.push_back(line.substr(pos));
            return out;
        }
        out.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
}

double parse_double(const std::string& field, int line) {
    const char* begin = field.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        throw ParseError(line, "expected a number, got '" + field + "'");
    }
    return v;
}

long long parse_int(const std::string& field, int line) {
    const char* begin = field.c_str();
    char* end = nullptr;
    long long v = std::strtoll(begin, &end, 10);
    if (end == begin || *end != '\0') {
        throw ParseError(line, "expected an integer, got '" + field + "'");
    }
    return v;
}

std::uint64_t parse_u64(const std::string& field, int line) {
    const char* begin = field.c_str();
    char* end = nullptr;
    std::uint64_t v = std::strtoull(begin, &end, 10);
    if (end == begin || *end != '\0') {
        throw ParseError(line, "expected an unsigned integer, got '" + field + "'");
    }
    return v;
}

void expect_header(const Line& line, const std::string& header) {
    if (line.text != header) {
        throw ParseError(line.number, "expected header '" + header + "', got '" + line.text + "'");
    }
}

std::vector<std::string> expect_fields(const Line& line, std::size_t count) {
    std::vector<std::string> fields = split_fields(line.text);
    if (fields.size() != count) {
        throw ParseError(line.number, "expected " + std::to_string(count) + " fields, got " +
                                          std::to_string(fields.size()));
    }
    return fields;
}

bool is_comment(const Line& line) { return line.text[0] == '#'; }

}  // namespace

std::string fmt_g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string imu_log_csv(const std::vector<ImuSample>& samples) {
    std::string out = "time_s,imu_index,qw,qx,qy,qz\n";
    for (const ImuSample& s : samples) {
        out += fmt_g12(s.time_s) + "," + std::to_string(s.imu_index) + "," +
               fmt_g12(s.orientation.w) + "," + fmt_g12(s.orientation.x) + "," +
               fmt_g12(s.orientation.y) + "," + fmt_g12(s.orientation.z) + "\n";
    }
    return out;
}

std::vector<ImuSample> parse_imu_log_csv(const std::string& text) {
    std::vector<Line> lines = split_lines(text);
    std::vector<ImuSample> out;
    bool header_seen = false;
    for (const Line& line : lines) {
        if (is_comment(line)) continue;
        if (!header_seen) {
            expect_header(line, "time_s,imu_index,qw,qx,qy,qz");
            header_seen = true;
            continue;
        }
        std::vector<std::string> f = expect_fields(line, 6);
        ImuSample s;
        s.time_s = parse_double(f[0], line.number);
        s.imu_index = static_cast<int>(parse_int(f[1], line.number));
        s.orientation = Quat(parse_double(f[2], line.number), parse_double(f[3], line.number),
                             parse_double(f[4], line.number), parse_double(f[5], line.number));
        out.push_back(s);
    }
    if (!header_seen) {
        throw ParseError(1, "empty IMU log: missing header 'time_s,imu_index,qw,qx,qy,qz'");
    }
    return out;
}

std::vector<ImuSample> latest_samples(const std::vector<ImuSample>& log) {
    std::vector<ImuSample> out;
    for (const ImuSample& s : log) {
        bool found = false;
        for (ImuSample& existing : out) {
            if (existing.imu_index == s.imu_index) {
                existing = s;
                found = true;
                break;
            }
        }
        if (!found) {
            out.push_back(s);
        }
    }
    return out;
}

std::string offsets_csv(const OffsetTable& table) {
    std::string out = "# captured_at=" + fmt_g12(table.captured_at_s) + "\n";
    out += "pair_index,qw,qx,qy,qz\n";
    for (std::size_t i = 0; i < table.offsets.size(); ++i) {
        const Quat& q = table.offsets[i];
        out += std::to_string(i) + "," + fmt_g12(q.w) + "," + fmt_g12(q.x) + "," + fmt_g12(q.y) +
               "," + fmt_g12(q.z) + "\n";
    }
    return out;
}

OffsetTable parse_offsets_csv(const std::string& text) {
    std::vector<Line> lines = split_lines(text);
    OffsetTable table;
    bool header_seen = false;
    std::size_t expected_index = 0;
    for (const Line& line : lines) {
        if (is_comment(line)) {
            const std::string prefix = "# captured_at=";
            if (line.text.rfind(prefix, 0) == 0) {
                table.captured_at_s = parse_double(line.text.substr(prefix.size()), line.number);
            }
            continue;
        }
        if (!header_seen) {
            expect_header(line, "pair_index,qw,qx,qy,qz");
            header_seen = true;
            continue;
        }
        std::vector<std::string> f = expect_fields(line, 5);
        long long index = parse_int(f[0], line.number);
        if (index != static_cast<long long>(expected_index)) {
            throw ParseError(line.number, "expected pair_index " + std::to_string(expected_index) +
                                              ", got " + std::to_string(index));
        }
        ++expected_index;
        table.offsets.push_back(Quat(parse_double(f[1], line.number),
                                     parse_double(f[2], line.number),
                                     parse_double(f[3], line.number),
                                     parse_double(f[4], line.number)));
    }
    if (!header_seen) {
        throw ParseError(1, "empty offset table: missing header 'pair_index,qw,qx,qy,qz'");
    }
    return table;
}

std::string centerline_csv(const CenterlinePolyline& poly) {
    std::string out = "point_index,x_cm,y_cm,z_cm,is_imu\n";
    std::size_t imu_cursor = 0;
    for (std::size_t i = 0; i < poly.points.size(); ++i) {
        bool is_imu = imu_cursor < poly.imu_indices.size() &&
                      poly.imu_indices[imu_cursor] == static_cast<int>(i);
        if (is_imu) ++imu_cursor;
        const Vec3& p = poly.points[i];
        out += std::to_string(i) + "," + fmt_g12(p.x) + "," + fmt_g12(p.y) + "," + fmt_g12(p.z) +
               "," + (is_imu ? "1" : "0") + "\n";
    }
    const Pose& tip = poly.tip;
    out += "# tip," + fmt_g12(tip.position.x) + "," + fmt_g12(tip.position.y) + "," +
           fmt_g12(tip.position.z) + "," + fmt_g12(tip.orientation.w) + "," +
           fmt_g12(tip.orientation.x) + "," + fmt_g12(tip.orientation.y) + "," +
           fmt_g12(tip.orientation.z) + "\n";
    return out;
}

ParsedCenterline parse_centerline_csv(const std::string& text) {
    std::vector<Line> lines = split_lines(text);
    ParsedCenterline out;
    bool header_seen = false;
    for (const Line& line : lines) {
        if (is_comment(line)) {
            const std::string prefix = "# tip,";
            if (line.text.rfind(prefix, 0) == 0) {
                std::vector<std::string> f = split_fields(line.text.substr(prefix.size()));
                if (f.size() != 7) {
                    throw ParseError(line.number, "tip comment needs 7 fields, got " +
                                                      std::to_string(f.size()));
                }
                out.tip.position = Vec3{parse_double(f[0], line.number),
                                        parse_double(f[1], line.number),
                                        parse_double(f[2], line.number)};
                out.tip.orientation =
                    Quat(parse_double(f[3], line.number), parse_double(f[4], line.number),
                         parse_double(f[5], line.number), parse_double(f[6], line.number));
                out.has_tip = true;
            }
            continue;
        }
        if (!header_seen) {
            expect_header(line, "point_index,x_cm,y_cm,z_cm,is_imu");
            header_seen = true;
            continue;
        }
        std::vector<std::string> f = expect_fields(line, 5);
        long long index = parse_int(f[0], line.number);
        if (index != static_cast<long long>(out.points.size())) {
            throw ParseError(line.number,
                             "expected point_index " + std::to_string(out.points.size()) +
                                 ", got " + std::to_string(index));
        }
        out.points.push_back(Vec3{parse_double(f[1], line.number), parse_double(f[2], line.number),
                                  parse_double(f[3], line.number)});
        long long imu_flag = parse_int(f[4], line.number);
        if (imu_flag != 0 && imu_flag != 1) {
            throw ParseError(line.number, "is_imu must be 0 or 1, got " + f[4]);
        }
        out.is_imu.push_back(imu_flag == 1);
    }
    if (!header_seen) {
        throw ParseError(1, "empty centerline: missing header 'point_index,x_cm,y_cm,z_cm,is_imu'");
    }
    return out;
}

std::string records_csv(const std::vector<ExperimentRecord>& records) {
    std::string out = "trial,independent_var,tip_error_pct,seed,notes\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const ExperimentRecord& r = records[i];
        out += std::to_string(i) + "," + fmt_g12(r.independent_var) + "," +
               fmt_g12(r.tip_error_pct) + "," + std::to_string(r.trial_seed) + "," + r.notes +
               "\n";
    }
    return out;
}

std::vector<ExperimentRecord> parse_records_csv(const std::string& text) {
    std::vector<Line> lines = split_lines(text);
    std::vector<ExperimentRecord> out;
    bool header_seen = false;
    for (const Line& line : lines) {
        if (is_comment(line)) continue;
        if (!header_seen) {
            expect_header(line, "trial,independent_var,tip_error_pct,seed,notes");
            header_seen = true;
            continue;
        }
        std::vector<std::string> f = expect_fields(line, 5);
        long long index = parse_int(f[0], line.number);
        if (index != static_cast<long long>(out.size())) {
            throw ParseError(line.number, "expected trial " + std::to_string(out.size()) +
                                              ", got " + std::to_string(index));
        }
        ExperimentRecord r;
        r.independent_var = parse_double(f[1], line.number);
        r.tip_error_pct = parse_double(f[2], line.number);
        r.trial_seed = parse_u64(f[3], line.number);
        r.notes = f[4];
        out.push_back(r);
    }
    if (!header_seen) {
        throw ParseError(1,
                         "empty records: missing header 'trial,independent_var,tip_error_pct,seed,notes'");
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path + " for reading");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    out << content;
    if (!out) {
        throw std::runtime_error("failed writing " + path);
    }
}

}  // namespace vinesense::io
