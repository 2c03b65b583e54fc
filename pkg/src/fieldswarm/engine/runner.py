"""The round executor: sense, compute, interact, move.

step() runs exactly one device round: integrates the device's motion under
its previous goal, perceives (optionally noisy) positions, builds the
context from unexpired in-range messages, evaluates the program, stores the
new actuation goal, and broadcasts the export subject to message loss.
"""

from __future__ import annotations

import math

from ..constructs import evaluate
from ..context import Context
from ..exports import EMPTY_EXPORT
from ..vectors import Vec3
from .devices import LONG_STANDING, ROUND_BASED, ActuationGoal, DeviceState, InboxEntry, World


def perceived_position(true: Vec3, noise_std: float, rng) -> Vec3:
    """Perceive a position with independent Gaussian x/y noise (z untouched)."""
    if noise_std <= 0.0:
        return true
    return Vec3(
        true.x + rng.gauss(0.0, noise_std),
        true.y + rng.gauss(0.0, noise_std),
        true.z,
    )


def apply_kinematics(device: DeviceState, dt: float, max_speed: float) -> DeviceState:
    """Explicit Euler step under the speed-clamped velocity goal."""
    if dt <= 0.0:
        raise ValueError("dt must be > 0")
    v = device.velocity_goal.clamp(max_speed)
    device.last_velocity = v
    if v.x or v.y or v.z:
        device.true_position = device.true_position + v * dt
    return device


def apply_kill(world: World) -> World:
    """Mark floor(K*N) uniformly chosen alive unprotected devices dead."""
    world.kill_applied = True
    fraction = world.faults.kill_fraction
    if fraction <= 0.0:
        return world
    alive = world.alive_ids()
    count = math.floor(fraction * len(alive))
    candidates = [d for d in alive if d not in world.protected]
    count = min(count, len(candidates))
    for dev_id in world.rng_kill.sample(candidates, count):
        world.devices[dev_id].alive = False
    return world


def deliver(world: World, sender: DeviceState, export, sender_event: int | None) -> None:
    """Place the export in every in-range alive receiver's inbox, each with
    independent probability 1-D; newer entries replace older ones."""
    loss = world.faults.message_loss
    rng = world.rng_delivery
    pos = sender.true_position
    comm = world.comm_range
    entry = InboxEntry(
        export=export,
        sender_perceived=sender.perceived_position,
        received_at=world.time,
        sender_event=sender_event,
    )
    for dev_id in sorted(world.devices):
        if dev_id == sender.id:
            continue
        receiver = world.devices[dev_id]
        if not receiver.alive:
            continue
        if pos.distance_to(receiver.true_position) > comm:
            continue
        if loss > 0.0 and rng.random() < loss:
            continue
        receiver.inbox[sender.id] = entry


def build_context(device: DeviceState, world: World, event_id: int | None = None) -> Context:
    """Assemble the round input: previous export, unexpired exports from
    currently-in-range alive senders, sensors, perceived distances."""
    now = world.time
    expiry = world.message_expiry
    recorder = world.recorder

    expired = [
        sender for sender, e in device.inbox.items() if now - e.received_at > expiry
    ]
    for sender in expired:
        del device.inbox[sender]

    prev = device.previous_export if device.previous_export is not None else EMPTY_EXPORT
    exports = {device.id: prev}
    distances = {device.id: 0.0}
    my_pos = device.true_position
    my_perceived = device.perceived_position
    for sender_id in sorted(device.inbox):
        entry = device.inbox[sender_id]
        sender = world.devices.get(sender_id)
        if sender is None or not sender.alive:
            continue
        if my_pos.distance_to(sender.true_position) > world.comm_range:
            continue
        exports[sender_id] = entry.export
        distances[sender_id] = my_perceived.distance_to(entry.sender_perceived)
        if recorder is not None and event_id is not None and entry.sender_event is not None:
            recorder.add_edge(entry.sender_event, event_id)
    if recorder is not None and event_id is not None and device.last_event_id is not None:
        recorder.add_edge(device.last_event_id, event_id)

    sensors = dict(device.sensors)
    sensors["position"] = my_perceived
    sensors["velocity"] = device.last_velocity
    sensors["max_speed"] = world.max_speed
    return Context(
        self_id=device.id,
        time=now,
        previous_export=device.previous_export,
        neighbour_exports=exports,
        sensors=sensors,
        nbr_distances=distances,
        rng_seed=f"{world.seed}:{device.id}:{device.round_count}",
        round_period=world.round_period,
    )


def _set_goal(device: DeviceState, output) -> None:
    # Programs may return (actuation, telemetry...) tuples; the head drives
    # the actuators, the rest is observable through last_output only.
    if (
        isinstance(output, tuple)
        and output
        and isinstance(output[0], (Vec3, ActuationGoal))
    ):
        output = output[0]
    if isinstance(output, Vec3):
        device.velocity_goal = output
        device.goal_modality = ROUND_BASED
    elif isinstance(output, ActuationGoal):
        device.velocity_goal = output.velocity
        device.goal_modality = output.modality
    elif device.goal_modality == ROUND_BASED:
        device.velocity_goal = Vec3.zero()  # round-based goal expired unrenewed


def step(world: World, program) -> World:
    """Execute exactly one device round and advance world time."""
    faults = world.faults
    while True:
        if not world.schedule:
            raise RuntimeError("no alive device left to schedule")
        t, dev_id = world.schedule.pop()
        if faults.kill_time is not None and not world.kill_applied and t >= faults.kill_time:
            world.time = t
            apply_kill(world)
        device = world.devices[dev_id]
        if device.alive:
            break
    world.time = t

    if world.hooks is not None and hasattr(world.hooks, "before_round"):
        world.hooks.before_round(world, device)

    apply_kinematics(device, world.round_period, world.max_speed)
    device.perceived_position = perceived_position(
        device.true_position, faults.position_noise, world.rng_noise
    )

    event_id = None
    if world.recorder is not None:
        event_id = world.recorder.add_event(device.id, t, device.true_position)

    ctx = build_context(device, world, event_id)
    output, export = evaluate(program, ctx)
    if world.recorder is not None:
        world.recorder.set_output(event_id, output)

    device.previous_export = export
    device.last_output = output
    device.round_count += 1
    device.last_round_time = t
    device.last_event_id = event_id
    _set_goal(device, output)

    deliver(world, device, export, event_id)

    if world.hooks is not None and hasattr(world.hooks, "after_round"):
        world.hooks.after_round(world, device)

    world.schedule.push(t + world.round_period, dev_id)
    return world


def run_steps(world: World, program, steps: int) -> World:
    for _ in range(steps):
        step(world, program)
    return world


def run_sweeps(world: World, program, sweeps: int) -> World:
    """Run `sweeps` full passes (one round per alive device each)."""
    for _ in range(sweeps):
        run_steps(world, program, len(world.alive_ids()))
    return world


def run_until(world: World, program, end_time: float) -> World:
    while world.schedule and world.schedule.peek_time() < end_time:
        step(world, program)
    world.time = max(world.time, end_time)
    return world
