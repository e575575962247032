#include "soliton/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>

#include "soliton/errors.hpp"

namespace soliton::fft {

namespace {

// Plans are cached per (size, direction). FFTW_ESTIMATE keeps planning
// deterministic; FFTW_UNALIGNED lets us execute on std::vector storage.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    void execute(std::vector<cplx>& data, int sign) {
        const auto n = data.size();
        fftw_plan plan = nullptr;
        {
            std::lock_guard lock(mutex_);
            auto key = std::make_pair(n, sign);
            auto it = plans_.find(key);
            if (it == plans_.end()) {
                std::vector<cplx> scratch(n);
                auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
                plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign,
                                        FFTW_ESTIMATE | FFTW_UNALIGNED);
                plans_.emplace(key, plan);
            } else {
                plan = it->second;
            }
        }
        auto* buf = reinterpret_cast<fftw_complex*>(data.data());
        fftw_execute_dft(plan, buf, buf);
    }

private:
    PlanCache() = default;
    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

}  // namespace

void forward(std::vector<cplx>& data) {
    if (data.empty()) throw InvalidArgument("fft: empty input");
    PlanCache::instance().execute(data, FFTW_FORWARD);
}

void inverse(std::vector<cplx>& data) {
    if (data.empty()) throw InvalidArgument("fft: empty input");
    PlanCache::instance().execute(data, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(data.size());
    for (auto& x : data) x *= scale;
}

void shift(std::vector<cplx>& data) {
    std::rotate(data.begin(), data.begin() + data.size() / 2, data.end());
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace soliton::fft
