import multiprocessing
import queue
import psutil
import signal
import traceback


### Functions to run independent searches in parallel, allowing for KeyboardInterrupt etc.

## Used by the amenability probe, split extension searches and batch verification

def _do_work(job_queue, result_queue, partial_func):
    """
    Processes jobs from the multiprocessing queue until all jobs are finished, posting (job index, result) pairs.
    Adapted from: https://github.com/ikreymer/cdx-index-client

    Args:
        job_queue: multiprocessing.Queue() object holding (index, job) pairs
        result_queue: multiprocessing.Queue() object receiving (index, status, result) triples
        partial_func: Function to be run on each job
    """

    signal.signal(signal.SIGINT, signal.SIG_IGN)
    while not job_queue.empty():
        try:
            index, job = job_queue.get_nowait()
        except queue.Empty:
            break

        try:
            result_queue.put((index, 'ok', partial_func(job)))

        except KeyboardInterrupt:
            break

        except Exception:
            result_queue.put((index, 'error', traceback.format_exc()))


def _killWorkers(workers):
    '''
    Kill workers and any children they have spawned.
    '''

    for worker in workers:
        if not worker.is_alive():
            continue
        try:
            parent = psutil.Process(worker.pid)
            children = parent.children(recursive = True)
            parent.send_signal(signal.SIGKILL)
            for process in children:
                process.send_signal(signal.SIGKILL)
        except psutil.NoSuchProcess:
            pass
        worker.terminate()
        worker.join()


def runWorkers(partial_func, n_processes, jobs):
    """
    This script is a queuing system that respects KeyboardInterrupt, returning results in job order.
    Adapted from: https://github.com/ikreymer/cdx-index-client
    Which in turn was adapted from: http://bryceboe.com/2012/02/14/python-multiprocessing-pool-and-keyboardinterrupt-revisited/

    Args:
        partial_func: Function to be run (established with functools.partial())
        n_processes: Number of parallel processes. With 1, jobs run in the calling process.
        jobs: List of individual inputs for partial_func (e.g. a list of probe rounds)

    Returns:
        A list of results, in the order of jobs.
    """

    jobs = list(jobs)

    if n_processes <= 1 or len(jobs) <= 1:
        return [partial_func(job) for job in jobs]

    # Queue up all jobs
    job_queue = multiprocessing.Queue()
    result_queue = multiprocessing.Queue()

    for index, job in enumerate(jobs):
        job_queue.put((index, job))

    workers = []

    for i in range(0, min(n_processes, len(jobs))):

        tmp = multiprocessing.Process(target=_do_work, args=(job_queue, result_queue, partial_func))
        tmp.daemon = True
        tmp.start()
        workers.append(tmp)

    results = {}

    try:

        # Drain results before joining, so that no worker blocks on a full pipe
        while len(results) < len(jobs):
            try:
                index, status, result = result_queue.get(timeout = 1)
            except queue.Empty:
                if not any([worker.is_alive() for worker in workers]) and result_queue.empty():
                    raise RuntimeError('Worker processes exited with %s of %s jobs unfinished.'%(str(len(jobs) - len(results)), str(len(jobs))))
                continue

            if status == 'error':
                raise RuntimeError('Job %s failed in a worker process:\n%s'%(str(index), result))

            results[index] = result

        for worker in workers:
            worker.join()

    except KeyboardInterrupt:
        print('Keyboard interrupt (ctrl-c) detected. Exiting all processes.')
        _killWorkers(workers)
        raise

    except RuntimeError:
        _killWorkers(workers)
        raise

    return [results[i] for i in range(len(jobs))]
