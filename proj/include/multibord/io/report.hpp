#ifndef MULTIBORD_IO_REPORT_HPP
#define MULTIBORD_IO_REPORT_HPP

#include <json.hpp>

#include <chrono>
#include <string>

namespace multibord {

// Deterministic report documents: given identical inputs and seeds the
// serialized JSON is byte-identical except for the single "timestamp" field
// (which also carries wall-clock timings).
class ReportDocument {
  public:
    explicit ReportDocument(std::string command);

    nlohmann::json& body() { return body_; }
    const nlohmann::json& body() const { return body_; }

    void finish();  // stamps timestamp + elapsed into the volatile field
    std::string serialize() const;
    void write_file(const std::string& path) const;

    // Serialization with the volatile field removed, for byte comparisons.
    std::string serialize_stable() const;

  private:
    nlohmann::json body_;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace multibord

#endif
