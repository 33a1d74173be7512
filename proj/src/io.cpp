#include "platsim/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "platsim/format.hpp"

namespace platsim {

std::string render_messages_csv(std::uint64_t seed, Architecture arch, FeedPolicy policy,
                                std::span<const MessageOutcome> outcomes) {
    std::ostringstream os;
    os << messages_csv_header() << "\n";
    const char* plat = to_string(arch);
    const char* alg = to_string(policy);
    for (const auto& o : outcomes) {
        os << seed << ',' << plat << ',' << alg << ',' << o.id << ',' << o.created_step << ','
           << fmt9(o.motivating) << ',' << fmt9(o.illuminating) << ',' << fmt9(o.quality) << ','
           << o.reach << ',' << o.exposure << ',' << o.resharers << ',' << o.likers << "\n";
    }
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

const char* kColumns[12] = {"seed",  "platform", "algorithm", "msg_id",
                            "created_step", "k",        "beta",      "alpha",
                            "reach", "exposure", "reshares",  "likes"};

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

std::uint64_t parse_u64(const std::string& s, const char* column, std::uint64_t line_no) {
    std::uint64_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw std::runtime_error("line " + std::to_string(line_no) + ": column \"" + column +
                                 "\": expected integer, got \"" + s + "\"");
    return v;
}

double parse_real(const std::string& s, const char* column, std::uint64_t line_no) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || s.empty())
        throw std::runtime_error("line " + std::to_string(line_no) + ": column \"" + column +
                                 "\": expected real, got \"" + s + "\"");
    return v;
}

} // namespace

std::vector<MessageRow> read_messages_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open messages csv: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file, missing header");
    const auto header = split_csv_line(line);
    if (header.size() != 12)
        throw std::runtime_error(path + ": expected 12 columns, got " +
                                 std::to_string(header.size()));
    for (int i = 0; i < 12; ++i)
        if (header[i] != kColumns[i])
            throw std::runtime_error(path + ": column " + std::to_string(i + 1) + " is \"" +
                                     header[i] + "\", expected \"" + kColumns[i] + "\"");

    std::vector<MessageRow> rows;
    std::uint64_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 12)
            throw std::runtime_error(path + ": line " + std::to_string(line_no) + ": expected 12 fields, got " +
                                     std::to_string(f.size()));
        MessageRow r;
        r.seed = parse_u64(f[0], "seed", line_no);
        r.platform = f[1];
        r.algorithm = f[2];
        r.outcome.id = parse_u64(f[3], "msg_id", line_no);
        r.outcome.created_step = static_cast<std::uint32_t>(parse_u64(f[4], "created_step", line_no));
        r.outcome.motivating = parse_real(f[5], "k", line_no);
        r.outcome.illuminating = parse_real(f[6], "beta", line_no);
        r.outcome.quality = parse_real(f[7], "alpha", line_no);
        r.outcome.reach = static_cast<std::uint32_t>(parse_u64(f[8], "reach", line_no));
        r.outcome.exposure = static_cast<std::uint32_t>(parse_u64(f[9], "exposure", line_no));
        r.outcome.resharers = static_cast<std::uint32_t>(parse_u64(f[10], "reshares", line_no));
        r.outcome.likers = static_cast<std::uint32_t>(parse_u64(f[11], "likes", line_no));
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string render_event_log(std::span<const EventRecord> events) {
    std::ostringstream os;
    for (const auto& e : events) {
        os << e.step << '\t' << to_string(e.kind) << '\t';
        if (e.kind == EventKind::Delivered) {
            if (e.recipient_is_group) os << 'g';
            os << e.recipient << '\t' << e.msg << '\t' << to_string(e.outcome);
        } else {
            os << e.actor << '\t' << e.msg << '\t' << '-';
        }
        os << '\n';
    }
    return os.str();
}

namespace {

std::string opt9(const std::optional<double>& v) {
    return v ? fmt9(*v) : std::string("-");
}

} // namespace

std::string render_condition_summary(const std::string& platform, const std::string& algorithm,
                                     const ConditionSummary& s) {
    std::ostringstream os;
    os << "condition: " << platform << " / " << algorithm << "\n";
    os << "messages: " << s.n_messages << "\n";
    os << "metric      breadth      depth_mean   depth_geom   unconditional\n";
    for (int m = 0; m < 4; ++m) {
        const auto& ms = s.by_metric[m];
        char line[160];
        std::snprintf(line, sizeof(line), "%-10s  %-11s  %-11s  %-11s  %s\n",
                      to_string(static_cast<Metric>(m)), fmt9(ms.breadth).c_str(),
                      opt9(ms.depth_arith).c_str(), opt9(ms.depth_geom).c_str(),
                      opt9(ms.unconditional).c_str());
        os << line;
    }
    os << "exposure_weighted_quality: " << opt9(s.exposure_weighted_quality) << "\n";
    return os.str();
}

} // namespace platsim
