#include "multibord/io/report.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "multibord/errors.hpp"

namespace multibord {

ReportDocument::ReportDocument(std::string command) : start_(std::chrono::steady_clock::now()) {
    body_["command"] = std::move(command);
}

void ReportDocument::finish() {
    auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    std::time_t now = std::time(nullptr);
    char stamp[64];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    std::ostringstream os;
    os << stamp << " elapsed=" << elapsed << "s";
    body_["timestamp"] = os.str();
}

std::string ReportDocument::serialize() const { return body_.dump(1) + "\n"; }

std::string ReportDocument::serialize_stable() const {
    nlohmann::json copy = body_;
    copy.erase("timestamp");
    return copy.dump(1) + "\n";
}

void ReportDocument::write_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write report: " + path);
    out << serialize();
}

}  // namespace multibord
