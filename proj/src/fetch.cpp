#include "tcbga/fetch.hpp"

#include <array>
#include <fstream>
#include <memory>
#include <sstream>

#include <curl/curl.h>
#include <openssl/evp.h>

#include "tcbga/error.hpp"

namespace tcbga {

namespace {

std::size_t append_body(char* data, std::size_t size, std::size_t count, void* user) {
    static_cast<std::string*>(user)->append(data, size * count);
    return size * count;
}

struct CurlGlobal {
    CurlGlobal() { curl_global_init(CURL_GLOBAL_DEFAULT); }
    ~CurlGlobal() { curl_global_cleanup(); }
};

} // namespace

std::string sha256_hex(std::string_view bytes) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 computation failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xF];
    }
    return out;
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return sha256_hex(ss.str());
}

std::string download(const std::string& url) {
    static CurlGlobal global;
    std::unique_ptr<CURL, decltype(&curl_easy_cleanup)> curl(curl_easy_init(), curl_easy_cleanup);
    if (!curl) throw DataError("cannot initialise libcurl");
    std::string body;
    char error[CURL_ERROR_SIZE] = {};
    curl_easy_setopt(curl.get(), CURLOPT_URL, url.c_str());
    curl_easy_setopt(curl.get(), CURLOPT_FOLLOWLOCATION, 1L);
    curl_easy_setopt(curl.get(), CURLOPT_FAILONERROR, 1L);
    curl_easy_setopt(curl.get(), CURLOPT_CONNECTTIMEOUT, 30L);
    curl_easy_setopt(curl.get(), CURLOPT_WRITEFUNCTION, append_body);
    curl_easy_setopt(curl.get(), CURLOPT_WRITEDATA, &body);
    curl_easy_setopt(curl.get(), CURLOPT_ERRORBUFFER, error);
    if (const auto rc = curl_easy_perform(curl.get()); rc != CURLE_OK)
        throw DataError("download of " + url + " failed: " + (error[0] ? error : curl_easy_strerror(rc)));
    return body;
}

FetchResult fetch_dataset(const DatasetDescriptor& desc, const std::filesystem::path& dest_dir,
                          const std::string& url_override) {
    const std::string url = url_override.empty() ? desc.url : url_override;
    if (url.empty()) throw DataError("descriptor '" + desc.name + "' has no URL");
    if (desc.file.empty()) throw DataError("descriptor '" + desc.name + "' has no file name");

    const std::string body = download(url);
    FetchResult result;
    result.file = dest_dir / desc.file;
    result.bytes = body.size();
    result.sha256 = sha256_hex(body);
    if (!desc.sha256.empty() && result.sha256 != desc.sha256)
        throw DataError("checksum mismatch for " + desc.name + ": expected " + desc.sha256 + ", got " + result.sha256);

    std::filesystem::create_directories(dest_dir);
    const auto partial = dest_dir / (desc.file + ".part");
    {
        std::ofstream out(partial, std::ios::binary);
        out << body;
        if (!out) throw DataError("cannot write " + partial.string());
    }
    try {
        const auto loaded = load_csv(partial, desc.schema);
        if (const auto issues = check_shape(desc, loaded); !issues.empty()) {
            std::string msg = desc.name + " does not match its descriptor:";
            for (const auto& i : issues) msg += " " + i + ";";
            throw DataError(msg);
        }
    } catch (...) {
        std::filesystem::remove(partial);
        throw;
    }
    std::filesystem::rename(partial, result.file);
    return result;
}

} // namespace tcbga
