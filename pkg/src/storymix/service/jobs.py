"""Background pipeline jobs with a polling status registry.

Corpus analysis can take minutes against a live provider, so POST /corpus
returns a job id immediately and the pipeline runs on a worker thread.
Per-story failures are recorded and the job moves on to the next story.
"""

from __future__ import annotations

import logging
import threading
import traceback
from dataclasses import dataclass, field

logger = logging.getLogger(__name__)


@dataclass
class Job:
    id: str
    state: str = "running"  # running | done
    stories: dict[str, dict] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"id": self.id, "state": self.state, "stories": self.stories}


class JobRunner:
    def __init__(self) -> None:
        self._jobs: dict[str, Job] = {}
        self._lock = threading.Lock()
        self._seq = 0

    def get(self, job_id: str) -> Job | None:
        return self._jobs.get(job_id)

    def submit(self, story_ids: list[str], process_one) -> Job:
        """process_one(story_id) runs the pipeline for one story."""
        with self._lock:
            self._seq += 1
            job = Job(id=f"job-{self._seq:06d}")
            job.stories = {sid: {"state": "pending"} for sid in story_ids}
            self._jobs[job.id] = job

        def work() -> None:
            for sid in story_ids:
                job.stories[sid] = {"state": "running"}
                try:
                    process_one(sid)
                    job.stories[sid] = {"state": "done"}
                except Exception as e:  # noqa: BLE001 - job must survive any story
                    logger.error("pipeline failed for story %s: %s", sid, e)
                    logger.debug("%s", traceback.format_exc())
                    job.stories[sid] = {"state": "failed", "error": str(e)}
            job.state = "done"

        threading.Thread(target=work, name=f"pipeline-{job.id}", daemon=True).start()
        return job
