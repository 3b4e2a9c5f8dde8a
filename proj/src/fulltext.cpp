#include "autosg/fulltext.hpp"

#include "autosg/errors.hpp"
#include "autosg/pdf_text.hpp"
#include "autosg/util.hpp"

#include <cstdio>
#include <cstdlib>

namespace autosg {

namespace {

std::string run_external_extractor(const std::string& cmd_template,
                                   const std::string& payload)
{
    namespace fs = std::filesystem;
    fs::path tmp = fs::temp_directory_path();
    fs::path in = tmp / ("autosg-doc-" + fnv1a64_hex(payload) + ".pdf");
    fs::path out_path = in;
    out_path.replace_extension(".txt");
    write_file(in, payload);

    std::string cmd = cmd_template;
    auto replace_all = [&cmd](const std::string& from, const std::string& to) {
        size_t pos = 0;
        while ((pos = cmd.find(from, pos)) != std::string::npos) {
            cmd.replace(pos, from.size(), to);
            pos += to.size();
        }
    };
    replace_all("%in", in.string());
    replace_all("%out", out_path.string());

    int rc = std::system(cmd.c_str());
    std::string text;
    if (rc == 0 && fs::exists(out_path))
        text = read_file(out_path);
    std::error_code ec;
    fs::remove(in, ec);
    fs::remove(out_path, ec);
    if (rc != 0)
        throw ParseError("external PDF extractor failed (exit " + std::to_string(rc) +
                         "): " + cmd_template);
    return text;
}

DocumentText finish(std::string payload, const std::string& locator,
                    const PipelineConfig& cfg, const std::string& passthrough_method)
{
    DocumentText doc;
    doc.locator = locator;
    if (looks_like_pdf(payload)) {
        if (!cfg.pdf_extractor_cmd.empty()) {
            doc.text = run_external_extractor(cfg.pdf_extractor_cmd, payload);
            doc.method = "pdf-external";
        } else {
            doc.text = extract_pdf_text(payload);
            doc.method = "pdf-builtin";
        }
    } else {
        doc.text = std::move(payload);
        doc.method = passthrough_method;
    }
    if (doc.text.empty())
        throw ParseError("full text extraction produced no text from " + locator);
    if (static_cast<int>(doc.text.size()) < cfg.fulltext_min_chars)
        throw ParseError("full text below length floor (" +
                         std::to_string(doc.text.size()) + " < " +
                         std::to_string(cfg.fulltext_min_chars) +
                         " chars); supply the document manually");
    return doc;
}

} // namespace

DocumentText acquire_fulltext(const RerankDecision& decision, HttpGetter* getter,
                              const PipelineConfig& cfg,
                              const std::optional<std::filesystem::path>& override_path)
{
    if (override_path)
        return finish(read_file(*override_path), override_path->string(), cfg,
                      "provided");

    const std::string& locator = decision.record.fulltext_url;
    if (locator.empty())
        throw InputError("Top-1 record has no full-text locator; supply the document "
                         "with --from-text");

    if (locator.rfind("http://", 0) == 0 || locator.rfind("https://", 0) == 0) {
        if (!getter)
            throw NetworkError("no transport available to download " + locator);
        return finish(getter->get(locator), locator, cfg, "plain");
    }
    // Local path locator (recorded fixtures point at files).
    return finish(read_file(locator), locator, cfg, "plain");
}

} // namespace autosg
