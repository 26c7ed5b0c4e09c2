#include "cardioseis/recording.hpp"

#include "cardioseis/error.hpp"

#include <cmath>

namespace cardioseis {

void validate(const Recording& rec)
{
    validate(rec.scg);
    validate(rec.ecg);
    validate(rec.flow);
    if (rec.ecg.size() != rec.scg.size() || rec.flow.size() != rec.scg.size())
        throw InputError("recording '" + rec.id + "': channels differ in length");
    if (rec.ecg.fs != rec.scg.fs || rec.flow.fs != rec.scg.fs)
        throw InputError("recording '" + rec.id + "': channels differ in sampling rate");
}

}  // namespace cardioseis
